//! The circle product and the graded commutator bracket on cochains.
//!
//! For `P` of weight `p` and `Q` of weight `q`, the product `P ∘ Q` has
//! weight `p + q` and is a sum of three shuffle families:
//!
//! 1. `Q` applied to a shuffled block of pairs and the x-member of pair
//!    `k+q`, its output substituted as the new x-member of that pair;
//! 2. the same with the y-member;
//! 3. `Q` applied to a shuffled block of pairs and the final argument,
//!    its output fed into the final slot of `P`.
//!
//! The first two families carry the prefactor `(-1)^{(k-1)q}` over
//! `(k-1,q)`-shuffles; the third carries `(-1)^{pq}` over `(p,q)`-shuffles.
//! The graded bracket is `[P,Q] = P∘Q - (-1)^{pq} Q∘P`.

use crate::cochain::{Cochain, Idx, PreCochain};
use crate::linalg::Matrix;
use crate::scalar::{parity_sign, Scalar};
use crate::shuffle::shuffles;

fn add_scaled(acc: &mut [Scalar], sign: i8, coeff: &Scalar, v: &[Scalar]) {
    for (dst, src) in acc.iter_mut().zip(v) {
        if src.is_zero() {
            continue;
        }
        let term = coeff * src;
        if sign == 1 {
            *dst += term;
        } else {
            *dst -= &term;
        }
    }
}

/// Evaluates `(P ∘ Q)` at one tuple of basis arguments (length
/// `2(p+q)+1`). Both cochains must be self-coefficient on the same space.
pub fn circ_eval(p: &PreCochain, q: &PreCochain, args: &[Idx]) -> Vec<Scalar> {
    assert_eq!(p.ambient_dim(), q.ambient_dim(), "ambient dimension mismatch");
    assert!(
        p.is_self_coefficient() && q.is_self_coefficient(),
        "circle product requires self-coefficient cochains"
    );
    let wp = p.weight();
    let wq = q.weight();
    let total = wp + wq;
    assert_eq!(args.len(), 2 * total + 1, "argument count mismatch");
    let dim = p.ambient_dim();
    let fin = args[2 * total];
    let pair_x = |i: usize| args[2 * i]; // 0-based pair position
    let pair_y = |i: usize| args[2 * i + 1];

    let mut out = vec![Scalar::zero(); dim];

    // Families 1 and 2: substitution into the x- (resp. y-) member of the
    // pair at position k+q; the shuffle runs over the first k-1+q pairs.
    for k in 1..=wp {
        let prefactor = parity_sign((k - 1) * wq);
        let sub = k + wq - 1; // 0-based position of the substituted pair
        for sh in shuffles(k - 1, wq) {
            let sign = prefactor * sh.sign;
            for y_member in [false, true] {
                let mut q_args: Vec<Idx> = Vec::with_capacity(2 * wq + 1);
                for &i in &sh.second {
                    q_args.push(pair_x(i));
                    q_args.push(pair_y(i));
                }
                q_args.push(if y_member { pair_y(sub) } else { pair_x(sub) });
                let q_val = q.eval(&q_args);
                if q_val.iter().all(Scalar::is_zero) {
                    continue;
                }
                for (e, coeff) in q_val.iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    let mut p_args: Vec<Idx> = Vec::with_capacity(2 * wp + 1);
                    for &i in &sh.first {
                        p_args.push(pair_x(i));
                        p_args.push(pair_y(i));
                    }
                    if y_member {
                        p_args.push(pair_x(sub));
                        p_args.push(e as Idx);
                    } else {
                        p_args.push(e as Idx);
                        p_args.push(pair_y(sub));
                    }
                    for i in sub + 1..total {
                        p_args.push(pair_x(i));
                        p_args.push(pair_y(i));
                    }
                    p_args.push(fin);
                    add_scaled(&mut out, sign, coeff, &p.eval(&p_args));
                }
            }
        }
    }

    // Family 3: Q's output fed into the final slot of P.
    let prefactor = parity_sign(wp * wq);
    for sh in shuffles(wp, wq) {
        let sign = prefactor * sh.sign;
        let mut q_args: Vec<Idx> = Vec::with_capacity(2 * wq + 1);
        for &i in &sh.second {
            q_args.push(pair_x(i));
            q_args.push(pair_y(i));
        }
        q_args.push(fin);
        let q_val = q.eval(&q_args);
        if q_val.iter().all(Scalar::is_zero) {
            continue;
        }
        for (e, coeff) in q_val.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let mut p_args: Vec<Idx> = Vec::with_capacity(2 * wp + 1);
            for &i in &sh.first {
                p_args.push(pair_x(i));
                p_args.push(pair_y(i));
            }
            p_args.push(e as Idx);
            add_scaled(&mut out, sign, coeff, &p.eval(&p_args));
        }
    }

    out
}

/// Evaluates the graded bracket `[P,Q]` at one argument tuple.
pub fn nr_bracket_eval(p: &PreCochain, q: &PreCochain, args: &[Idx]) -> Vec<Scalar> {
    let mut out = circ_eval(p, q, args);
    let swapped = circ_eval(q, p, args);
    let sign = parity_sign(p.weight() * q.weight());
    for (dst, src) in out.iter_mut().zip(&swapped) {
        if sign == 1 {
            *dst -= src;
        } else {
            *dst += src;
        }
    }
    out
}

/// Materializes `P ∘ Q` over the full canonical keyspace.
pub fn circ(p: &PreCochain, q: &PreCochain) -> PreCochain {
    let weight = p.weight() + q.weight();
    let dim = p.ambient_dim();
    let mut out = PreCochain::zero(weight, dim, dim);
    for key in PreCochain::raw_keys(weight, dim) {
        let v = circ_eval(p, q, &key);
        if !v.iter().all(Scalar::is_zero) {
            out.set_entry(&key, v);
        }
    }
    out
}

/// Materializes the graded bracket `[P,Q]`.
pub fn nr_bracket(p: &PreCochain, q: &PreCochain) -> PreCochain {
    let weight = p.weight() + q.weight();
    let dim = p.ambient_dim();
    let mut out = PreCochain::zero(weight, dim, dim);
    for key in PreCochain::raw_keys(weight, dim) {
        let v = nr_bracket_eval(p, q, &key);
        if !v.iter().all(Scalar::is_zero) {
            out.set_entry(&key, v);
        }
    }
    out
}

/// A square matrix viewed as a weight-0 self-coefficient cochain
/// (basis vector `e_x` maps to column `x`).
pub fn endo_cochain(n: &Matrix) -> Cochain {
    assert!(n.is_square(), "endomorphism must be square");
    let d = n.rows();
    let columns: Vec<Vec<Scalar>> = (0..d).map(|c| n.column(c)).collect();
    Cochain::from_linear_map(&columns, d)
}
