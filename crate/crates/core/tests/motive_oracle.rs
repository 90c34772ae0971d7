//! `build_motive` against a brute-force character of `Λ^{2r} H^1(X)`.
//!
//! `H^1(X)` is the direct sum of one copy of `H^1` per factor copy. On the
//! maximal torus each elliptic slot has one coordinate (weights ±1) and each
//! surface slot two (weights ±e1, ±e2). The character of `H^{2r}(X)` is the
//! sum over `2r`-element subsets of those weights.

use std::collections::BTreeMap;

use tatecheck_core::motive::{
    build_motive, FactorKind, FactorSpec, IrrepLabel, ProductSpec, SlotPart,
};
use tatecheck_core::rep::CharPoly;

type Multi = BTreeMap<Vec<i32>, i64>;

fn add(into: &mut Multi, w: Vec<i32>, c: i64) {
    let e = into.entry(w.clone()).or_insert(0);
    *e += c;
    if *e == 0 {
        into.remove(&w);
    }
}

fn mul(a: &Multi, b: &Multi) -> Multi {
    let mut out = Multi::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            let w: Vec<i32> = wa.iter().zip(wb).map(|(x, y)| x + y).collect();
            add(&mut out, w, ca * cb);
        }
    }
    out
}

/// Coordinate offsets of each slot in the combined torus.
fn layout(slots: &[FactorSpec]) -> (Vec<usize>, usize) {
    let mut offs = Vec::new();
    let mut n = 0;
    for s in slots {
        offs.push(n);
        n += match s.kind {
            FactorKind::Elliptic => 1,
            FactorKind::Surface => 2,
        };
    }
    (offs, n)
}

fn brute_force(slots: &[FactorSpec], r: u32) -> Multi {
    let (offs, n) = layout(slots);
    let mut weights = Vec::new();
    for (s, &o) in slots.iter().zip(&offs) {
        for _ in 0..s.exponent {
            let coords = match s.kind {
                FactorKind::Elliptic => 1,
                FactorKind::Surface => 2,
            };
            for c in 0..coords {
                for sign in [1, -1] {
                    let mut w = vec![0; n];
                    w[o + c] = sign;
                    weights.push(w);
                }
            }
        }
    }
    let k = 2 * r as usize;
    let mut out = Multi::new();
    for mask in 0u32..(1 << weights.len()) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let mut w = vec![0; n];
        for (i, wi) in weights.iter().enumerate() {
            if mask & (1 << i) != 0 {
                for (a, b) in w.iter_mut().zip(wi) {
                    *a += b;
                }
            }
        }
        add(&mut out, w, 1);
    }
    out
}

fn label_character(label: &IrrepLabel, slots: &[FactorSpec]) -> Multi {
    let (offs, n) = layout(slots);
    let mut acc = Multi::from([(vec![0; n], 1)]);
    for (part, &o) in label.parts.iter().zip(&offs) {
        let mut piece = Multi::new();
        match part {
            SlotPart::Elliptic(k) => {
                for (w, c) in CharPoly::<i32>::sym(*k).terms() {
                    let mut v = vec![0; n];
                    v[o] = w;
                    add(&mut piece, v, c);
                }
            }
            SlotPart::Surface(ws) => {
                let chi = ws
                    .iter()
                    .fold(CharPoly::one(), |a, w| a.mul(&w.character()));
                for (w, c) in chi.terms() {
                    let mut v = vec![0; n];
                    v[o] = w.0;
                    v[o + 1] = w.1;
                    add(&mut piece, v, c);
                }
            }
        }
        acc = mul(&acc, &piece);
    }
    acc
}

fn check(factors: Vec<FactorSpec>) {
    let spec = ProductSpec::new(factors, 1).unwrap();
    for r in 1..=spec.dim() {
        let spec = spec.with_r(r).unwrap();
        let d = build_motive(&spec).unwrap();
        let mut got = Multi::new();
        for (label, mult) in d.iter() {
            assert_eq!(label.degree() as i64, 2 * label.twist as i64, "weight 0");
            for (w, c) in label_character(label, &d.slots) {
                add(&mut got, w, c * mult as i64);
            }
        }
        assert_eq!(got, brute_force(&d.slots, r), "{:?} r={r}", spec.factors());
    }
}

#[test]
fn elliptic_products_up_to_dim_five() {
    for n1 in 1..=5u32 {
        check(vec![FactorSpec::elliptic("E1", n1)]);
        for n2 in 1..=(5 - n1) {
            check(vec![
                FactorSpec::elliptic("E1", n1),
                FactorSpec::elliptic("E2", n2),
            ]);
            for n3 in 1..=(5 - n1 - n2) {
                check(vec![
                    FactorSpec::elliptic("E1", n1),
                    FactorSpec::elliptic("E2", n2),
                    FactorSpec::elliptic("E3", n3),
                ]);
            }
        }
    }
}

#[test]
fn surfaces_and_mixed_products() {
    check(vec![FactorSpec::surface("A", 1)]);
    check(vec![FactorSpec::surface("A", 2)]);
    check(vec![
        FactorSpec::surface("A", 1),
        FactorSpec::surface("B", 1),
    ]);
    check(vec![
        FactorSpec::surface("A", 1),
        FactorSpec::elliptic("E", 1),
    ]);
    check(vec![
        FactorSpec::surface("A", 1),
        FactorSpec::elliptic("E", 3),
    ]);
    check(vec![
        FactorSpec::surface("A", 2),
        FactorSpec::elliptic("E", 1),
    ]);
}
