use proptest::prelude::*;

use tatecheck_core::galois::{predicted_rank, BaseField, ClassKind, GaloisType, IsogenyClass};
use tatecheck_core::motive::{
    binomial, build_motive, total_dim, FactorKind, FactorSpec, ProductSpec,
};
use tatecheck_core::rep::{clebsch_gordan, tensor_power_decompose, CharPoly, Sl2Rep};

fn product() -> impl Strategy<Value = Vec<FactorSpec>> {
    prop::collection::vec((any::<bool>(), 1u32..=3), 1..=3).prop_map(|v| {
        v.into_iter()
            .enumerate()
            .map(|(i, (surface, n))| {
                if surface {
                    FactorSpec::surface(format!("A{i}"), n.min(2))
                } else {
                    FactorSpec::elliptic(format!("E{i}"), n)
                }
            })
            .collect()
    })
}

fn galois(factors: &[FactorSpec], cm: u8) -> GaloisType {
    let classes = factors
        .iter()
        .enumerate()
        .map(|(i, f)| IsogenyClass {
            members: vec![f.id.clone()],
            kind: match (f.kind, cm) {
                (FactorKind::Surface, _) => ClassKind::GenericSurface,
                (_, 0) => ClassKind::NonCm,
                (_, c) => ClassKind::Cm {
                    field_in_base: c == 1,
                    cm_field: format!("K{i}"),
                },
            },
        })
        .collect();
    GaloisType {
        classes,
        base_field: BaseField::TotallyReal,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dimension_weight_and_duality(factors in product(), cm in 0u8..3) {
        let spec = ProductSpec::new(factors, 1).unwrap();
        let dim = spec.dim();
        let g = galois(spec.factors(), cm);
        for r in 1..=dim {
            let d = build_motive(&spec.with_r(r).unwrap()).unwrap();
            prop_assert_eq!(total_dim(&d), binomial(2 * dim as u64, 2 * r as u64));
            for (label, _) in d.iter() {
                prop_assert_eq!(label.motivic_weight(), 0);
            }
            let rank = predicted_rank(&d, &g).unwrap();
            if r < dim {
                let dual = build_motive(&spec.with_r(dim - r).unwrap()).unwrap();
                prop_assert_eq!(&dual.summands, &d.summands);
                prop_assert_eq!(predicted_rank(&dual, &g).unwrap().total, rank.total);
            }
            prop_assert!(rank.total >= 1);
            let trivial = rank.summands.iter().find(|s| s.label.is_trivial()).unwrap();
            prop_assert!(trivial.mult >= 1 && trivial.invariant_dim == 1);
        }
    }

    #[test]
    fn clebsch_gordan_dimension_and_symmetry(a in 0u32..40, b in 0u32..40) {
        let ab = clebsch_gordan(a, b);
        prop_assert_eq!(ab.dim(), ((a + 1) * (b + 1)) as u64);
        prop_assert_eq!(&ab, &clebsch_gordan(b, a));
        let chi = CharPoly::<i32>::sym(a).mul(&CharPoly::sym(b));
        prop_assert_eq!(Sl2Rep::from_character(&chi).unwrap(), ab);
    }

    #[test]
    fn tensor_power_dimension(n in 0u32..20) {
        let total: u64 = tensor_power_decompose(n).iter().map(|t| t.mult * (t.k as u64 + 1)).sum();
        prop_assert_eq!(total, 1u64 << n);
    }
}
