//! Multilinear cochains on pair slots plus a final slot.
//!
//! A cochain of weight `w` on a `d`-dimensional space takes `w` arguments
//! from the second exterior power (each a pair of vectors, skew within the
//! pair) followed by one plain vector, and produces a vector in a target
//! space of dimension `m`. Values are stored only on canonical keys: each
//! pair sorted ascending, signs absorbed.
//!
//! Two layers:
//!
//! * [`PreCochain`]: skew within each pair only. This is the ambient
//!   space in which the graded bracket is evaluated term by term.
//! * [`Cochain`]: additionally fully skew under all permutations of the
//!   last three arguments (the final pair and the final slot), so it is
//!   determined by values on `w-1` pairs plus one ascending triple. For
//!   weight 1 this is exactly the space of skew trilinear brackets.

use crate::scalar::Scalar;
use std::collections::HashMap;
use std::fmt;

/// Basis index, 0-based internally (file formats are 1-based).
pub type Idx = u8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CochainError {
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("argument count {got} does not match weight {weight} (expected {expected})")]
    ArityMismatch {
        weight: usize,
        expected: usize,
        got: usize,
    },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not admissible: skew symmetry of the last three arguments fails at {args:?}")]
    NotAdmissible { args: Vec<Idx> },
}

/// Canonicalizes one pair: `None` on a repeated index, otherwise the
/// ascending pair and the sign picked up by the swap.
pub fn canonical_pair(a: Idx, b: Idx) -> Option<((Idx, Idx), i8)> {
    use std::cmp::Ordering::*;
    match a.cmp(&b) {
        Equal => None,
        Less => Some(((a, b), 1)),
        Greater => Some(((b, a), -1)),
    }
}

/// Canonicalizes a triple: `None` on repeats, otherwise ascending order
/// with the permutation parity.
pub fn canonical_triple(a: Idx, b: Idx, c: Idx) -> Option<((Idx, Idx, Idx), i8)> {
    if a == b || a == c || b == c {
        return None;
    }
    let mut t = [a, b, c];
    let mut sign = 1i8;
    // three-element bubble sort, counting swaps
    if t[0] > t[1] {
        t.swap(0, 1);
        sign = -sign;
    }
    if t[1] > t[2] {
        t.swap(1, 2);
        sign = -sign;
    }
    if t[0] > t[1] {
        t.swap(0, 1);
        sign = -sign;
    }
    Some(((t[0], t[1], t[2]), sign))
}

/// Ascending pairs (a,b), a<b, in lexicographic order.
pub fn pair_list(dim: usize) -> Vec<(Idx, Idx)> {
    let mut out = Vec::with_capacity(dim * (dim.saturating_sub(1)) / 2);
    for a in 0..dim {
        for b in a + 1..dim {
            out.push((a as Idx, b as Idx));
        }
    }
    out
}

/// Ascending triples (a,b,c), a<b<c, in lexicographic order.
pub fn triple_list(dim: usize) -> Vec<(Idx, Idx, Idx)> {
    let mut out = Vec::new();
    for a in 0..dim {
        for b in a + 1..dim {
            for c in b + 1..dim {
                out.push((a as Idx, b as Idx, c as Idx));
            }
        }
    }
    out
}

/// Rank of an ascending pair in [`pair_list`] order.
pub fn pair_rank(a: Idx, b: Idx, dim: usize) -> usize {
    debug_assert!(a < b && (b as usize) < dim);
    let a = a as usize;
    let b = b as usize;
    // pairs starting below a, then offset within the a-block
    a * dim - a * (a + 1) / 2 + (b - a - 1)
}

/// Rank of an ascending triple in [`triple_list`] order.
pub fn triple_rank(a: Idx, b: Idx, c: Idx, dim: usize) -> usize {
    debug_assert!(a < b && b < c && (c as usize) < dim);
    let (a, b, c) = (a as usize, b as usize, c as usize);
    let choose3 = |n: usize| {
        if n < 3 {
            0
        } else {
            n * (n - 1) * (n - 2) / 6
        }
    };
    let choose2 = |n: usize| if n < 2 { 0 } else { n * (n - 1) / 2 };
    // triples whose first index is below a, then pairs below (b,c) inside
    choose3(dim) - choose3(dim - a) + (choose2(dim - a - 1) - choose2(dim - b)) + (c - b - 1)
}

pub fn pair_count(dim: usize) -> usize {
    dim * dim.saturating_sub(1) / 2
}

pub fn triple_count(dim: usize) -> usize {
    if dim < 3 {
        0
    } else {
        dim * (dim - 1) * (dim - 2) / 6
    }
}

/// Dimension of the raw (pair-skew only) cochain space.
pub fn raw_dim(weight: usize, ambient_dim: usize, target_dim: usize) -> usize {
    pair_count(ambient_dim).pow(weight as u32) * ambient_dim * target_dim
}

/// Dimension of the admissible cochain space.
pub fn admissible_dim(weight: usize, ambient_dim: usize, target_dim: usize) -> usize {
    if weight == 0 {
        ambient_dim * target_dim
    } else {
        pair_count(ambient_dim).pow(weight as u32 - 1)
            * triple_count(ambient_dim)
            * target_dim
    }
}

/// A multilinear map on `weight` pair slots plus a final slot, skew within
/// each pair, with values in an `m`-dimensional target space.
#[derive(Clone, PartialEq, Eq)]
pub struct PreCochain {
    weight: usize,
    ambient_dim: usize,
    target_dim: usize,
    /// canonical key `[a1,b1,..,aw,bw,x]` -> value vector; all-zero values
    /// are never stored
    entries: HashMap<Vec<Idx>, Vec<Scalar>>,
}

impl fmt::Debug for PreCochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PreCochain(w={}, d={}, m={}, {} entries)",
            self.weight,
            self.ambient_dim,
            self.target_dim,
            self.entries.len()
        )
    }
}

impl PreCochain {
    pub fn zero(weight: usize, ambient_dim: usize, target_dim: usize) -> Self {
        assert!(ambient_dim >= 1 && ambient_dim <= Idx::MAX as usize);
        PreCochain {
            weight,
            ambient_dim,
            target_dim,
            entries: HashMap::new(),
        }
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn arity(&self) -> usize {
        2 * self.weight + 1
    }

    pub fn is_self_coefficient(&self) -> bool {
        self.ambient_dim == self.target_dim
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry_count(&self) -> usize {
        self.entries.len()
    }

    fn check_args(&self, args: &[Idx]) -> Result<(), CochainError> {
        if args.len() != self.arity() {
            return Err(CochainError::ArityMismatch {
                weight: self.weight,
                expected: self.arity(),
                got: args.len(),
            });
        }
        for &a in args {
            if a as usize >= self.ambient_dim {
                return Err(CochainError::IndexOutOfRange {
                    index: a as usize,
                    dim: self.ambient_dim,
                });
            }
        }
        Ok(())
    }

    /// Canonical form of an argument tuple: pairs sorted ascending with the
    /// accumulated sign. `None` when some pair repeats an index.
    pub fn canonical_key(args: &[Idx]) -> Option<(Vec<Idx>, i8)> {
        debug_assert!(args.len() % 2 == 1);
        let weight = args.len() / 2;
        let mut key = Vec::with_capacity(args.len());
        let mut sign = 1i8;
        for i in 0..weight {
            let ((a, b), s) = canonical_pair(args[2 * i], args[2 * i + 1])?;
            key.push(a);
            key.push(b);
            sign *= s;
        }
        key.push(args[2 * weight]);
        Some((key, sign))
    }

    /// Evaluates at basis arguments. The result is `sign * stored value`
    /// after canonicalizing each pair; the zero vector when a pair repeats
    /// an index or nothing is stored.
    pub fn eval(&self, args: &[Idx]) -> Vec<Scalar> {
        self.try_eval(args).expect("bad arguments to eval")
    }

    pub fn try_eval(&self, args: &[Idx]) -> Result<Vec<Scalar>, CochainError> {
        self.check_args(args)?;
        let Some((key, sign)) = Self::canonical_key(args) else {
            return Ok(vec![Scalar::zero(); self.target_dim]);
        };
        Ok(match self.entries.get(&key) {
            None => vec![Scalar::zero(); self.target_dim],
            Some(v) if sign == 1 => v.clone(),
            Some(v) => v.iter().map(|x| -x).collect(),
        })
    }

    /// Adds `sign * value` at the canonicalization of `args`.
    pub fn add_term(&mut self, args: &[Idx], sign: i8, value: &[Scalar]) {
        self.check_args(args).expect("bad arguments to add_term");
        assert_eq!(value.len(), self.target_dim);
        let Some((key, s)) = Self::canonical_key(args) else {
            return; // repeated index within a pair: contributes nothing
        };
        let total = sign * s;
        let slot = self
            .entries
            .entry(key.clone())
            .or_insert_with(|| vec![Scalar::zero(); self.target_dim]);
        for (dst, src) in slot.iter_mut().zip(value) {
            if total == 1 {
                *dst += src;
            } else {
                *dst -= src;
            }
        }
        if slot.iter().all(Scalar::is_zero) {
            self.entries.remove(&key);
        }
    }

    /// Sets the value at a canonical key, replacing any previous value.
    pub fn set_entry(&mut self, args: &[Idx], value: Vec<Scalar>) {
        self.check_args(args).expect("bad arguments to set_entry");
        let (key, sign) = Self::canonical_key(args).expect("repeated index within a pair");
        assert_eq!(sign, 1, "set_entry requires a canonical key");
        assert_eq!(value.len(), self.target_dim);
        if value.iter().all(Scalar::is_zero) {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, value);
        }
    }

    /// Stored entries in sorted key order (deterministic).
    pub fn iter_sorted(&self) -> Vec<(&Vec<Idx>, &Vec<Scalar>)> {
        let mut items: Vec<_> = self.entries.iter().collect();
        items.sort_by(|a, b| a.0.cmp(b.0));
        items
    }

    pub fn add(&self, other: &PreCochain) -> PreCochain {
        self.combined(other, 1)
    }

    pub fn sub(&self, other: &PreCochain) -> PreCochain {
        self.combined(other, -1)
    }

    fn combined(&self, other: &PreCochain, sign: i8) -> PreCochain {
        assert_eq!(
            (self.weight, self.ambient_dim, self.target_dim),
            (other.weight, other.ambient_dim, other.target_dim),
            "cochain shape mismatch"
        );
        let mut out = self.clone();
        for (key, value) in &other.entries {
            let slot = out
                .entries
                .entry(key.clone())
                .or_insert_with(|| vec![Scalar::zero(); out.target_dim]);
            for (dst, src) in slot.iter_mut().zip(value) {
                if sign == 1 {
                    *dst += src;
                } else {
                    *dst -= src;
                }
            }
            if slot.iter().all(Scalar::is_zero) {
                out.entries.remove(key);
            }
        }
        out
    }

    pub fn scale(&self, k: &Scalar) -> PreCochain {
        if k.is_zero() {
            return PreCochain::zero(self.weight, self.ambient_dim, self.target_dim);
        }
        let mut out = self.clone();
        for value in out.entries.values_mut() {
            for v in value.iter_mut() {
                *v *= k;
            }
        }
        out
    }

    pub fn neg(&self) -> PreCochain {
        self.scale(&Scalar::from_int(-1))
    }

    /// All canonical raw keys in deterministic (lexicographic) order.
    pub fn raw_keys(weight: usize, dim: usize) -> Vec<Vec<Idx>> {
        let pairs = pair_list(dim);
        let mut out = Vec::with_capacity(pairs.len().pow(weight as u32) * dim);
        let mut counters = vec![0usize; weight];
        loop {
            for x in 0..dim {
                let mut key = Vec::with_capacity(2 * weight + 1);
                for &c in &counters {
                    key.push(pairs[c].0);
                    key.push(pairs[c].1);
                }
                key.push(x as Idx);
                out.push(key);
            }
            // increment the pair counters, most significant first for lex order
            let mut i = weight;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                counters[i] += 1;
                if counters[i] < pairs.len() {
                    break;
                }
                counters[i] = 0;
            }
        }
    }

    /// Coordinates in the raw basis (key-major, target-minor ordering).
    pub fn raw_coordinates(&self) -> Vec<Scalar> {
        let keys = Self::raw_keys(self.weight, self.ambient_dim);
        let mut out = Vec::with_capacity(keys.len() * self.target_dim);
        for key in &keys {
            match self.entries.get(key) {
                Some(v) => out.extend(v.iter().cloned()),
                None => out.extend(std::iter::repeat_n(Scalar::zero(), self.target_dim)),
            }
        }
        out
    }

    /// Trilinear evaluation of a weight-1 cochain at vector arguments:
    /// the sum over stored keys `((a,b),f)` of `(x_a y_b - x_b y_a) z_f`
    /// times the stored value.
    pub fn eval_w1_vectors(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.weight, 1, "vector evaluation is for weight-1 cochains");
        assert!(x.len() == self.ambient_dim && y.len() == self.ambient_dim && z.len() == self.ambient_dim);
        let mut out = vec![Scalar::zero(); self.target_dim];
        for (key, value) in self.iter_sorted() {
            let (a, b, f) = (key[0] as usize, key[1] as usize, key[2] as usize);
            if z[f].is_zero() {
                continue;
            }
            let wedge = &(&x[a] * &y[b]) - &(&x[b] * &y[a]);
            if wedge.is_zero() {
                continue;
            }
            let coeff = &wedge * &z[f];
            for (dst, src) in out.iter_mut().zip(value) {
                if !src.is_zero() {
                    *dst += &coeff * src;
                }
            }
        }
        out
    }

    /// Verifies full skew symmetry of the last three arguments, returning
    /// the first violating argument tuple in sorted key order.
    pub fn admissibility_violation(&self) -> Option<Vec<Idx>> {
        if self.weight == 0 {
            return None;
        }
        for (key, value) in self.iter_sorted() {
            let n = key.len();
            let (a, b, c) = (key[n - 3], key[n - 2], key[n - 1]);
            if c == a || c == b {
                // repeated argument among the last three must evaluate to zero
                if !value.iter().all(Scalar::is_zero) {
                    return Some(key.clone());
                }
                continue;
            }
            let ((t1, t2, t3), _) = canonical_triple(a, b, c).expect("distinct");
            let mut rep_args = key.clone();
            rep_args[n - 3] = t1;
            rep_args[n - 2] = t2;
            rep_args[n - 1] = t3;
            let rep = self.eval(&rep_args);
            // every key in the triple's orbit must match the fully skew
            // expansion of the ascending representative (absent keys are zero)
            for (pa, pb, fin, sign) in [(t1, t2, t3, 1i8), (t1, t3, t2, -1), (t2, t3, t1, 1)] {
                let mut args = key.clone();
                args[n - 3] = pa;
                args[n - 2] = pb;
                args[n - 1] = fin;
                let got = self.eval(&args);
                let expected: Vec<Scalar> = if sign == 1 {
                    rep.clone()
                } else {
                    rep.iter().map(|x| -x).collect()
                };
                if got != expected {
                    return Some(args);
                }
            }
        }
        None
    }
}

/// An admissible cochain: a [`PreCochain`] that is fully skew under all
/// permutations of its last three arguments.
#[derive(Clone, PartialEq, Eq)]
pub struct Cochain(PreCochain);

impl fmt::Debug for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cochain({:?})", self.0)
    }
}

impl Cochain {
    pub fn zero(weight: usize, ambient_dim: usize, target_dim: usize) -> Self {
        Cochain(PreCochain::zero(weight, ambient_dim, target_dim))
    }

    /// Wraps a pre-cochain after checking admissibility.
    pub fn from_pre(pre: PreCochain) -> Result<Self, CochainError> {
        match pre.admissibility_violation() {
            None => Ok(Cochain(pre)),
            Some(args) => Err(CochainError::NotAdmissible { args }),
        }
    }

    /// Builds from values on admissible keys: `weight-1` canonical pairs
    /// plus an ascending triple. The triple expands into the three raw keys
    /// it determines.
    pub fn from_triple_terms<I>(
        weight: usize,
        ambient_dim: usize,
        target_dim: usize,
        terms: I,
    ) -> Result<Self, CochainError>
    where
        I: IntoIterator<Item = (Vec<(Idx, Idx)>, (Idx, Idx, Idx), Vec<Scalar>)>,
    {
        assert!(weight >= 1, "triple keys require weight >= 1");
        let mut pre = PreCochain::zero(weight, ambient_dim, target_dim);
        for (pairs, (a, b, c), value) in terms {
            if pairs.len() != weight - 1 {
                return Err(CochainError::ArityMismatch {
                    weight,
                    expected: weight - 1,
                    got: pairs.len(),
                });
            }
            if !(a < b && b < c) {
                return Err(CochainError::DimensionMismatch(format!(
                    "triple [{a},{b},{c}] is not strictly ascending"
                )));
            }
            let mut prefix = Vec::with_capacity(2 * weight + 1);
            for &(x, y) in &pairs {
                prefix.push(x);
                prefix.push(y);
            }
            // T(a,b,c) = v determines T on (a,c|b) and (b,c|a) by skewness
            for (pa, pb, fin, sign) in [(a, b, c, 1), (a, c, b, -1), (b, c, a, 1)] {
                let mut args = prefix.clone();
                args.push(pa);
                args.push(pb);
                args.push(fin);
                pre.add_term(&args, sign, &value);
            }
        }
        Ok(Cochain(pre))
    }

    /// Weight-0 cochain from a linear map given by columns.
    pub fn from_linear_map(columns: &[Vec<Scalar>], target_dim: usize) -> Self {
        let ambient_dim = columns.len();
        let mut pre = PreCochain::zero(0, ambient_dim, target_dim);
        for (x, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), target_dim);
            pre.set_entry(&[x as Idx], col.clone());
        }
        Cochain(pre)
    }

    pub fn pre(&self) -> &PreCochain {
        &self.0
    }

    pub fn into_pre(self) -> PreCochain {
        self.0
    }

    pub fn weight(&self) -> usize {
        self.0.weight
    }

    pub fn ambient_dim(&self) -> usize {
        self.0.ambient_dim
    }

    pub fn target_dim(&self) -> usize {
        self.0.target_dim
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn eval(&self, args: &[Idx]) -> Vec<Scalar> {
        self.0.eval(args)
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        Cochain(self.0.add(&other.0))
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        Cochain(self.0.sub(&other.0))
    }

    pub fn scale(&self, k: &Scalar) -> Cochain {
        Cochain(self.0.scale(k))
    }

    /// Value at an admissible key (pairs prefix + ascending triple).
    pub fn triple_value(&self, pairs: &[(Idx, Idx)], triple: (Idx, Idx, Idx)) -> Vec<Scalar> {
        let mut args = Vec::with_capacity(2 * self.weight() + 1);
        for &(a, b) in pairs {
            args.push(a);
            args.push(b);
        }
        args.push(triple.0);
        args.push(triple.1);
        args.push(triple.2);
        self.0.eval(&args)
    }
}

/// An admissible basis key: `weight-1` pairs plus a triple, or a bare
/// final index at weight 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleKey {
    pub pairs: Vec<(Idx, Idx)>,
    pub last: AdmissibleLast,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdmissibleLast {
    Single(Idx),
    Triple(Idx, Idx, Idx),
}

impl AdmissibleKey {
    /// A representative raw argument tuple for this key.
    pub fn args(&self) -> Vec<Idx> {
        let mut out = Vec::new();
        for &(a, b) in &self.pairs {
            out.push(a);
            out.push(b);
        }
        match self.last {
            AdmissibleLast::Single(x) => out.push(x),
            AdmissibleLast::Triple(a, b, c) => {
                out.push(a);
                out.push(b);
                out.push(c);
            }
        }
        out
    }
}

/// Deterministic ordered list of admissible keys (lexicographic on pair
/// tuple, then triple / final index). The full basis is these keys crossed
/// with the target index, target-minor.
pub fn admissible_keys(weight: usize, dim: usize) -> Vec<AdmissibleKey> {
    if weight == 0 {
        return (0..dim)
            .map(|x| AdmissibleKey {
                pairs: vec![],
                last: AdmissibleLast::Single(x as Idx),
            })
            .collect();
    }
    let pairs = pair_list(dim);
    let triples = triple_list(dim);
    let prefix_len = weight - 1;
    let mut out = Vec::with_capacity(pairs.len().pow(prefix_len as u32) * triples.len());
    let mut counters = vec![0usize; prefix_len];
    loop {
        for &(a, b, c) in &triples {
            out.push(AdmissibleKey {
                pairs: counters.iter().map(|&i| pairs[i]).collect(),
                last: AdmissibleLast::Triple(a, b, c),
            });
        }
        let mut i = prefix_len;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            counters[i] += 1;
            if counters[i] < pairs.len() {
                break;
            }
            counters[i] = 0;
        }
    }
}

/// Basis cochain: value `e_target` at the given admissible key.
pub fn admissible_basis_cochain(
    weight: usize,
    ambient_dim: usize,
    target_dim: usize,
    key: &AdmissibleKey,
    target: usize,
) -> Cochain {
    let mut value = vec![Scalar::zero(); target_dim];
    value[target] = Scalar::one();
    match key.last {
        AdmissibleLast::Single(x) => {
            let mut pre = PreCochain::zero(0, ambient_dim, target_dim);
            pre.set_entry(&[x], value);
            Cochain(pre)
        }
        AdmissibleLast::Triple(a, b, c) => Cochain::from_triple_terms(
            weight,
            ambient_dim,
            target_dim,
            [(key.pairs.clone(), (a, b, c), value)],
        )
        .expect("basis key is admissible"),
    }
}

/// Resolves an argument tuple to its admissible coordinate: the key rank
/// in [`admissible_keys`] order and the sign relating the tuple to the
/// canonical representative. `None` when the tuple evaluates to zero for
/// every admissible cochain.
pub fn admissible_coordinate(args: &[Idx], dim: usize) -> Option<(usize, i8)> {
    debug_assert!(args.len() % 2 == 1);
    let weight = args.len() / 2;
    if weight == 0 {
        return Some((args[0] as usize, 1));
    }
    let mut sign = 1i8;
    let mut pair_ranks = Vec::with_capacity(weight - 1);
    for i in 0..weight - 1 {
        let ((a, b), s) = canonical_pair(args[2 * i], args[2 * i + 1])?;
        sign *= s;
        pair_ranks.push(pair_rank(a, b, dim));
    }
    let ((t1, t2, t3), s) =
        canonical_triple(args[2 * weight - 2], args[2 * weight - 1], args[2 * weight])?;
    sign *= s;
    let mut rank = 0usize;
    for pr in pair_ranks {
        rank = rank * pair_count(dim) + pr;
    }
    rank = rank * triple_count(dim) + triple_rank(t1, t2, t3, dim);
    Some((rank, sign))
}

/// Resolves an argument tuple to its raw coordinate (key rank in
/// [`PreCochain::raw_keys`] order plus sign).
pub fn raw_coordinate(args: &[Idx], dim: usize) -> Option<(usize, i8)> {
    debug_assert!(args.len() % 2 == 1);
    let weight = args.len() / 2;
    let mut sign = 1i8;
    let mut rank = 0usize;
    for i in 0..weight {
        let ((a, b), s) = canonical_pair(args[2 * i], args[2 * i + 1])?;
        sign *= s;
        rank = rank * pair_count(dim) + pair_rank(a, b, dim);
    }
    rank = rank * dim + args[2 * weight] as usize;
    Some((rank, sign))
}
