//! Numerical Haar integration of label characters, used as an independent
//! check on the exact invariant counts.
//!
//! Characters are evaluated from closed forms on the maximal torus (ratios of
//! sines, or a trace recursion on the non-identity component of N(U(1)))
//! rather than from the Laurent polynomials in [`crate::rep`]. Midpoint rules
//! integrate trigonometric polynomials of degree below `2N` exactly, so the
//! only error is rounding.

use std::f64::consts::PI;

use super::{ClassKind, GaloisModel, ResolvedClass};
use crate::error::{Error, Result};
use crate::motive::{IrrepLabel, SlotPart};
use crate::rep::Sp4Weight;

pub const DEFAULT_QUADRATURE_POINTS: usize = 128;

/// `Sym^k` of SU(2) at `diag(e^{iθ}, e^{−iθ})`.
fn sym_char(k: u32, theta: f64) -> f64 {
    ((k as f64 + 1.0) * theta).sin() / theta.sin()
}

/// Irreducible Sp(4) character at torus angles, as a ratio of 2×2 sine
/// determinants.
fn sp4_char(w: Sp4Weight, t1: f64, t2: f64) -> f64 {
    let det =
        |l1: f64, l2: f64| (l1 * t1).sin() * (l2 * t2).sin() - (l2 * t1).sin() * (l1 * t2).sin();
    det(w.a as f64 + 2.0, w.b as f64 + 1.0) / det(2.0, 1.0)
}

/// Trace of `Sym^k` of an SL(2) element with trace `t`.
fn sym_trace_from_trace(k: u32, t: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, t);
    if k == 0 {
        return 1.0;
    }
    for _ in 1..k {
        let next = t * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

type C = (f64, f64);

fn mul2(x: &[[C; 2]; 2], y: &[[C; 2]; 2]) -> [[C; 2]; 2] {
    let cmul = |a: C, b: C| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let mut out = [[(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for k in 0..2 {
            let (p, q) = (cmul(x[i][0], y[0][k]), cmul(x[i][1], y[1][k]));
            out[i][k] = (p.0 + q.0, p.1 + q.1);
        }
    }
    out
}

fn midpoints(n: usize, span: f64) -> impl Iterator<Item = f64> {
    (0..n).map(move |j| (j as f64 + 0.5) * span / n as f64)
}

fn degrees(label: &IrrepLabel, class: &ResolvedClass) -> Result<Vec<u32>> {
    class
        .slots
        .iter()
        .map(|&i| match label.parts.get(i) {
            Some(SlotPart::Elliptic(k)) => Ok(*k),
            _ => Err(Error::InvalidSpec(format!("slot {i} is not elliptic"))),
        })
        .collect()
}

fn integrate_class(label: &IrrepLabel, class: &ResolvedClass, n: usize) -> Result<f64> {
    match &class.kind {
        ClassKind::NonCm => {
            let ks = degrees(label, class)?;
            let sum: f64 = midpoints(n, PI)
                .map(|t| ks.iter().map(|&k| sym_char(k, t)).product::<f64>() * t.sin().powi(2))
                .sum();
            Ok(2.0 * sum / n as f64)
        }
        ClassKind::Cm { field_in_base, .. } => {
            let ks = degrees(label, class)?;
            let identity: f64 = midpoints(n, 2.0 * PI)
                .map(|t| ks.iter().map(|&k| sym_char(k, t)).product::<f64>())
                .sum::<f64>()
                / n as f64;
            if *field_in_base {
                return Ok(identity);
            }
            let j = [[(0.0, 0.0), (1.0, 0.0)], [(-1.0, 0.0), (0.0, 0.0)]];
            let other: f64 = midpoints(n, 2.0 * PI)
                .map(|phi| {
                    let t = [
                        [(phi.cos(), phi.sin()), (0.0, 0.0)],
                        [(0.0, 0.0), (phi.cos(), -phi.sin())],
                    ];
                    let g = mul2(&j, &t);
                    // g has determinant 1, so its trace determines every Sym^k trace
                    let trace = g[0][0].0 + g[1][1].0;
                    ks.iter()
                        .map(|&k| sym_trace_from_trace(k, trace))
                        .product::<f64>()
                })
                .sum::<f64>()
                / n as f64;
            Ok(0.5 * (identity + other))
        }
        ClassKind::GenericSurface => {
            let &[slot] = class.slots.as_slice() else {
                return Err(Error::UnsupportedGaloisType(
                    "generic_surface class must have one slot".into(),
                ));
            };
            let Some(SlotPart::Surface(ws)) = label.parts.get(slot) else {
                return Err(Error::InvalidSpec(format!("slot {slot} is not a surface")));
            };
            // offset grids never put θ1 = θ2 on a node
            let mut sum = 0.0;
            for t1 in midpoints(n, PI) {
                for t2 in midpoints(n + 1, PI) {
                    let density = (t1.cos() - t2.cos()).powi(2) * (t1.sin() * t2.sin()).powi(2);
                    let chi: f64 = ws.iter().map(|&w| sp4_char(w, t1, t2)).product();
                    sum += chi * density;
                }
            }
            Ok(8.0 * sum / (n * (n + 1)) as f64)
        }
    }
}

/// Haar average of the label's character over the model's Sato–Tate group.
/// The result approximates the exact invariant dimension.
pub fn weyl_integrate_oracle(
    label: &IrrepLabel,
    model: &GaloisModel,
    quadrature_points: usize,
) -> Result<f64> {
    if quadrature_points < 64 {
        return Err(Error::Domain(format!(
            "need at least 64 quadrature points, got {quadrature_points}"
        )));
    }
    model.classes.iter().try_fold(1.0, |acc, c| {
        Ok(acc * integrate_class(label, c, quadrature_points)?)
    })
}

#[cfg(test)]
mod tests {
    use super::super::{BaseField, GaloisType, IsogenyClass};
    use super::*;
    use crate::motive::FactorSpec;

    fn model(kind: ClassKind, slot: FactorSpec) -> (GaloisModel, Vec<FactorSpec>) {
        let slots = vec![slot];
        let g = GaloisType {
            classes: vec![IsogenyClass {
                members: vec![slots[0].id.clone()],
                kind,
            }],
            base_field: BaseField::Other,
        };
        (g.resolve(&slots).unwrap(), slots)
    }

    fn ell(k: u32) -> IrrepLabel {
        IrrepLabel {
            parts: vec![SlotPart::Elliptic(k)],
            twist: k as i32 / 2,
        }
    }

    #[test]
    fn schur_orthogonality_su2() {
        let (m, _) = model(ClassKind::NonCm, FactorSpec::elliptic("E", 1));
        let v = weyl_integrate_oracle(&ell(0), &m, 64).unwrap();
        assert!((v - 1.0).abs() < 1e-9);
        for k in 1..=8 {
            let v = weyl_integrate_oracle(&ell(k), &m, 64).unwrap();
            assert!(v.abs() < 1e-6, "k={k}: {v}");
        }
    }

    #[test]
    fn normalizer_of_torus() {
        let kind = ClassKind::Cm {
            field_in_base: false,
            cm_field: "Q(sqrt(-3))".into(),
        };
        let (m, _) = model(kind, FactorSpec::elliptic("E", 1));
        for (k, expected) in [(0, 1.0), (1, 0.0), (2, 0.0), (4, 1.0), (6, 0.0), (8, 1.0)] {
            let v = weyl_integrate_oracle(&ell(k), &m, 64).unwrap();
            assert!((v - expected).abs() < 1e-9, "k={k}: {v}");
        }
    }

    #[test]
    fn usp4_low_weights() {
        let (m, _) = model(ClassKind::GenericSurface, FactorSpec::surface("A", 2));
        let lab = |ws: Vec<Sp4Weight>| IrrepLabel {
            parts: vec![SlotPart::Surface(ws)],
            twist: 0,
        };
        let one = weyl_integrate_oracle(&lab(vec![Sp4Weight::TRIVIAL]), &m, 64).unwrap();
        assert!((one - 1.0).abs() < 1e-9);
        let w = weyl_integrate_oracle(&lab(vec![Sp4Weight::WEDGE2]), &m, 64).unwrap();
        assert!(w.abs() < 1e-6);
        let ww = weyl_integrate_oracle(&lab(vec![Sp4Weight::WEDGE2, Sp4Weight::WEDGE2]), &m, 64)
            .unwrap();
        assert!((ww - 1.0).abs() < 1e-6);
        let ss = weyl_integrate_oracle(&lab(vec![Sp4Weight::STD, Sp4Weight::STD]), &m, 64).unwrap();
        assert!((ss - 1.0).abs() < 1e-6);
    }

    #[test]
    fn rejects_coarse_grid() {
        let (m, _) = model(ClassKind::NonCm, FactorSpec::elliptic("E", 1));
        assert!(weyl_integrate_oracle(&ell(0), &m, 63).is_err());
    }
}
