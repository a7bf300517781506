//! Property tests for the algebraic invariants that hold on arbitrary inputs.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;

use orbitvol_core::exactnum::{ExactVolume, MultiPoly};
use orbitvol_core::linalg::{
    hs_inner, kron, partial_trace, vectorize, von_neumann_entropy, ComplexMatrix, DensityMatrix,
    Subsystem,
};
use orbitvol_core::twoqubit::{diag_triple, triple_to_spectrum};

fn matrix_strategy(rows: usize, cols: usize) -> impl Strategy<Value = ComplexMatrix> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), rows * cols).prop_map(
        move |entries| {
            ComplexMatrix::from_fn(rows, cols, |i, j| {
                let (re, im) = entries[i * cols + j];
                Complex64::new(re, im)
            })
        },
    )
}

fn density_strategy(m: usize, n: usize) -> impl Strategy<Value = DensityMatrix> {
    matrix_strategy(m * n, m * n).prop_filter_map("singular Ginibre draw", move |g| {
        let rho = g.mul(&g.adjoint());
        let tr = rho.trace().re;
        if tr <= 1e-6 {
            return None;
        }
        Some(DensityMatrix::new_unchecked(
            rho.scale(Complex64::new(1.0 / tr, 0.0)),
            (m, n),
        ))
    })
}

proptest! {
    #[test]
    fn partial_trace_of_product_scales_factor(
        a in matrix_strategy(2, 2),
        b in matrix_strategy(3, 3),
    ) {
        let rho = DensityMatrix::new_unchecked(kron(&a, &b), (2, 3));
        let ta = partial_trace(&rho, Subsystem::A);
        let expect = a.scale(b.trace());
        prop_assert!(ta.sub(&expect).hs_norm() < 1e-12);
        let tb = partial_trace(&rho, Subsystem::B);
        prop_assert!(tb.sub(&b.scale(a.trace())).hs_norm() < 1e-12);
    }

    #[test]
    fn vectorize_inner_product_is_hs_inner(
        a in matrix_strategy(3, 4),
        b in matrix_strategy(3, 4),
    ) {
        let va = vectorize(&a);
        let vb = vectorize(&b);
        let dot: Complex64 = va.iter().zip(&vb).map(|(x, y)| x.conj() * y).sum();
        prop_assert!((dot - hs_inner(&a, &b).unwrap()).norm() <= 1e-12);
    }

    #[test]
    fn entropy_bounds(rho in density_strategy(2, 2)) {
        let s = von_neumann_entropy(&rho).unwrap();
        prop_assert!(s >= -1e-12);
        prop_assert!(s <= 4.0f64.ln() + 1e-12);
    }

    #[test]
    fn triple_round_trip(
        l1 in 0.0f64..1.0, l2 in 0.0f64..1.0, l3 in 0.0f64..1.0, l4 in 0.0f64..1.0,
    ) {
        let total = l1 + l2 + l3 + l4;
        prop_assume!(total > 1e-3);
        let levels = [l1 / total, l2 / total, l3 / total, l4 / total];
        let back = triple_to_spectrum(&diag_triple(&levels));
        for (a, b) in levels.iter().zip(&back) {
            prop_assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn exact_volume_algebra(
        n1 in -40i64..40, d1 in 1i64..40, p1 in 0u32..5,
        n2 in -40i64..40, d2 in 1i64..40, p2 in 0u32..5,
    ) {
        let a = ExactVolume::new(BigRational::new(n1.into(), d1.into()), p1);
        let b = ExactVolume::new(BigRational::new(n2.into(), d2.into()), p2);
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        if n2 != 0 && p2 <= p1 {
            let q = a.div(&b).unwrap();
            prop_assert_eq!(q.mul(&b), a.clone());
        }
        if p1 == p2 {
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        } else {
            prop_assert!(a.add(&b).is_err());
        }
    }

    #[test]
    fn poly_eval_is_multiplicative(
        coeffs_a in proptest::collection::vec(-5i64..5, 4),
        coeffs_b in proptest::collection::vec(-5i64..5, 4),
        point in proptest::collection::vec(-1.0f64..1.0, 3),
    ) {
        // degree-1 polynomials c0 + c1 x0 + c2 x1 + c3 x2
        let build = |c: &[i64]| {
            let mut p = MultiPoly::constant(3, BigInt::from(c[0]));
            for k in 0..3 {
                let mut term = MultiPoly::var(3, k);
                term = term.mul(&MultiPoly::constant(3, BigInt::from(c[k + 1])));
                p = p.add(&term);
            }
            p
        };
        let pa = build(&coeffs_a);
        let pb = build(&coeffs_b);
        let prod = pa.mul(&pb);
        let lhs = prod.eval_f64(&point);
        let rhs = pa.eval_f64(&point) * pb.eval_f64(&point);
        prop_assert!((lhs - rhs).abs() <= 1e-10 * rhs.abs().max(1.0));
    }
}
