//! Laws of the graded bracket: antisymmetry, the graded Jacobi identity,
//! closure of admissible cochains, linearity of evaluation, and bidegree
//! additivity on split spaces.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trilie_core::bracket::{endo_cochain, nr_bracket};
use trilie_core::cochain::{admissible_basis_cochain, admissible_keys, PreCochain};
use trilie_core::scalar::{parity_sign, Scalar};
use trilie_core::split::{bidegree, lift_bracket, lift_cochain, lift_rep, Bidegree, SplitDims};
use trilie_core::three_lie::{Representation, ThreeLieAlgebra};
use trilie_core::{Cochain, Matrix};

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn random_pre(rng: &mut ChaCha8Rng, weight: usize, dim: usize) -> PreCochain {
    let mut pre = PreCochain::zero(weight, dim, dim);
    for key in PreCochain::raw_keys(weight, dim) {
        if rng.gen_bool(0.4) {
            let value: Vec<Scalar> = (0..dim).map(|_| s(rng.gen_range(-2..=2))).collect();
            if !value.iter().all(Scalar::is_zero) {
                pre.set_entry(&key, value);
            }
        }
    }
    pre
}

fn random_admissible(rng: &mut ChaCha8Rng, weight: usize, dim: usize) -> Cochain {
    let keys = admissible_keys(weight, dim);
    let mut acc = Cochain::zero(weight, dim, dim);
    for key in &keys {
        for t in 0..dim {
            if rng.gen_bool(0.3) {
                let coeff = s(rng.gen_range(-2..=2));
                if !coeff.is_zero() {
                    let basis = admissible_basis_cochain(weight, dim, dim, key, t);
                    acc = acc.add(&basis.scale(&coeff));
                }
            }
        }
    }
    acc
}

#[test]
fn graded_antisymmetry_over_random_cochains() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for wp in 0..=2usize {
        for wq in 0..=2usize {
            for _ in 0..6 {
                let d = 3;
                let p = random_pre(&mut rng, wp, d);
                let q = random_pre(&mut rng, wq, d);
                let pq = nr_bracket(&p, &q);
                let qp = nr_bracket(&q, &p);
                let sign = -parity_sign(wp * wq);
                let expected = if sign == 1 { qp } else { qp.neg() };
                assert_eq!(pq, expected, "weights ({wp},{wq})");
            }
        }
    }
}

#[test]
fn graded_jacobi_over_random_cochains() {
    // (-1)^{wp·wr}[[P,Q],R] + (-1)^{wq·wp}[[Q,R],P] + (-1)^{wr·wq}[[R,P],Q] = 0
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let weight_triples = [
        (0, 0, 0),
        (1, 0, 0),
        (1, 1, 0),
        (1, 1, 1),
        (2, 1, 0),
        (2, 1, 1),
        (2, 2, 0),
    ];
    for &(wp, wq, wr) in &weight_triples {
        for _ in 0..4 {
            let d = 3;
            let p = random_pre(&mut rng, wp, d);
            let q = random_pre(&mut rng, wq, d);
            let r = random_pre(&mut rng, wr, d);
            let t1 = nr_bracket(&nr_bracket(&p, &q), &r);
            let t2 = nr_bracket(&nr_bracket(&q, &r), &p);
            let t3 = nr_bracket(&nr_bracket(&r, &p), &q);
            let apply_sign = |c: PreCochain, e: usize| {
                if parity_sign(e) == 1 {
                    c
                } else {
                    c.neg()
                }
            };
            let total = apply_sign(t1, wp * wr)
                .add(&apply_sign(t2, wq * wp))
                .add(&apply_sign(t3, wr * wq));
            assert!(total.is_zero(), "weights ({wp},{wq},{wr})");
        }
    }
}

#[test]
fn bracket_of_admissible_cochains_is_admissible() {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    for (wp, wq, d) in [(1, 1, 3), (1, 1, 4), (1, 2, 3), (2, 2, 3), (0, 2, 3)] {
        for _ in 0..4 {
            let p = random_admissible(&mut rng, wp, d);
            let q = random_admissible(&mut rng, wq, d);
            let br = nr_bracket(p.pre(), q.pre());
            assert!(
                br.admissibility_violation().is_none(),
                "weights ({wp},{wq}) dim {d}"
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eval_is_linear_in_stored_values(a in -4i64..=4, b in -4i64..=4) {
        let mut p1 = PreCochain::zero(1, 3, 3);
        p1.set_entry(&[0, 1, 2], vec![s(1), s(0), s(2)]);
        let mut p2 = PreCochain::zero(1, 3, 3);
        p2.set_entry(&[0, 1, 2], vec![s(0), s(3), s(-1)]);
        p2.set_entry(&[0, 2, 1], vec![s(5), s(0), s(0)]);
        let combo = p1.scale(&s(a)).add(&p2.scale(&s(b)));
        for key in PreCochain::raw_keys(1, 3) {
            let lhs = combo.eval(&key);
            let rhs: Vec<Scalar> = p1
                .eval(&key)
                .iter()
                .zip(p2.eval(&key))
                .map(|(x, y)| &(&s(a) * x) + &(&s(b) * &y))
                .collect();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn eval_flips_under_within_pair_transpositions(sel in 0usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(sel as u64);
        let pre = random_pre(&mut rng, 2, 3);
        for key in PreCochain::raw_keys(2, 3) {
            let mut swapped = key.clone();
            let pair = sel % 2;
            swapped.swap(2 * pair, 2 * pair + 1);
            let direct = pre.eval(&key);
            let flipped: Vec<Scalar> = pre.eval(&swapped).iter().map(|x| -x).collect();
            prop_assert_eq!(direct, flipped);
        }
    }
}

#[test]
fn bidegree_is_additive_under_the_bracket() {
    // lifted structure maps have bidegree 2|0; lifted module-valued
    // cochains (2n-1)|-1; brackets add componentwise
    let alg = ThreeLieAlgebra::from_triple_terms(3, [((0, 1, 2), vec![(0, s(1))])]).unwrap();
    let rep = Representation::adjoint(&alg);
    let dims = SplitDims { base: 3, fiber: 3 };
    let anchor = lift_bracket(alg.bracket(), dims)
        .pre()
        .add(lift_rep(&rep, dims).pre());
    assert_eq!(bidegree(&anchor, dims), Bidegree::Homogeneous(2, 0));

    let mut rng = ChaCha8Rng::seed_from_u64(404);
    for weight in 0..=2usize {
        let mut f = PreCochain::zero(weight, 3, 3);
        for key in PreCochain::raw_keys(weight, 3) {
            if rng.gen_bool(0.5) {
                let value: Vec<Scalar> = (0..3).map(|_| s(rng.gen_range(-2..=2))).collect();
                if !value.iter().all(Scalar::is_zero) {
                    f.set_entry(&key, value);
                }
            }
        }
        let lifted = lift_cochain(&f, dims);
        let expected_l = 2 * weight as i64 + 1;
        match bidegree(&lifted, dims) {
            Bidegree::Zero => continue,
            got => assert_eq!(got, Bidegree::Homogeneous(expected_l, -1)),
        }
        let br = nr_bracket(&anchor, &lifted);
        match bidegree(&br, dims) {
            Bidegree::Zero => {}
            got => assert_eq!(
                got,
                Bidegree::Homogeneous(expected_l + 2, -1),
                "weight {weight}"
            ),
        }
    }
}

#[test]
fn identity_endomorphism_brackets_scale_structures() {
    let alg = ThreeLieAlgebra::from_triple_terms(4, [((0, 1, 2), vec![(0, s(1))])]).unwrap();
    let id = endo_cochain(&Matrix::identity(4));
    let br = nr_bracket(alg.bracket().pre(), id.pre());
    assert_eq!(br, alg.bracket().pre().scale(&s(2)));
}
