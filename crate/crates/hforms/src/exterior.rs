//! The complexified exterior algebra over an n-dimensional coframe.
//!
//! Monomials are wedge products `φ^{I J̄} := φ^{i₁}∧…∧φ^{i_p}∧φ̄^{j₁}∧…∧φ̄^{j_q}`
//! with both index lists strictly ascending; this canonical order (all
//! holomorphic factors first) is fixed once and every constructor reorders
//! into it with the exact permutation sign.  A [`Form`] is a sparse map from
//! monomials to scalars; it may mix bidegrees (differentials of (1,0)-forms
//! live in `Λ^{2,0} ⊕ Λ^{1,1} ⊕ Λ^{0,2}`), and [`Form::bidegree`] reports the
//! bidegree when the form is homogeneous.
//!
//! Index sets are bitmasks, so wedge signs are inversion counts between two
//! masks — no list shuffling.  The dimension is capped at 9 so that monomial
//! literals like `a12~34` stay unambiguous single-digit strings.

use std::collections::BTreeMap;
use std::fmt;


use crate::scalar::{GaussRational, Scalar, C64, Q};

/// Largest supported complex dimension (single-digit indices).
pub const MAX_DIM: u8 = 9;

// ---------------------------------------------------------------------------
// IndexSet
// ---------------------------------------------------------------------------

/// A strictly increasing set of coframe indices in `1..=n`, stored as a
/// bitmask (index `j` at bit `j-1`).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct IndexSet(u16);

impl IndexSet {
    pub fn empty() -> Self {
        IndexSet(0)
    }

    /// The full set `{1, …, n}`.
    pub fn full(n: u8) -> Self {
        IndexSet(((1u32 << n) - 1) as u16)
    }

    /// Build from indices that are already strictly ascending.
    ///
    /// Panics on out-of-order or out-of-range input; use
    /// [`IndexSet::sort_with_sign`] for arbitrary lists.
    pub fn from_ascending(indices: &[u8]) -> Self {
        let mut s = IndexSet::empty();
        let mut prev = 0u8;
        for &j in indices {
            assert!(j >= 1 && j <= MAX_DIM, "coframe index {j} out of range");
            assert!(j > prev, "indices must be strictly ascending");
            prev = j;
            s.0 |= 1 << (j - 1);
        }
        s
    }

    /// Sort an arbitrary index list into a set, tracking the permutation
    /// sign; `None` when an index repeats (the wedge vanishes).
    pub fn sort_with_sign(indices: &[u8]) -> Option<(Self, bool)> {
        let mut s = IndexSet::empty();
        let mut negative = false;
        for &j in indices {
            assert!(j >= 1 && j <= MAX_DIM, "coframe index {j} out of range");
            let bit = 1u16 << (j - 1);
            if s.0 & bit != 0 {
                return None;
            }
            // Moving φ^j past the already-placed factors greater than j
            // costs one transposition each.
            let greater = (s.0 >> j).count_ones();
            if greater % 2 == 1 {
                negative = !negative;
            }
            s.0 |= bit;
        }
        Some((s, negative))
    }

    pub fn contains(self, j: u8) -> bool {
        j >= 1 && (self.0 >> (j - 1)) & 1 == 1
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn intersects(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    pub fn union(self, other: Self) -> Self {
        IndexSet(self.0 | other.0)
    }

    pub fn remove(self, j: u8) -> Self {
        IndexSet(self.0 & !(1 << (j - 1)))
    }

    pub fn insert(self, j: u8) -> Self {
        IndexSet(self.0 | (1 << (j - 1)))
    }

    /// Number of elements strictly smaller than `j` (the 0-based position of
    /// `j` in the ascending list when `j` is a member).
    pub fn rank(self, j: u8) -> u32 {
        (self.0 & ((1u16 << (j - 1)) - 1)).count_ones()
    }

    /// Inversions between two disjoint sets: pairs `(a, b)` with `a ∈ self`,
    /// `b ∈ other`, `a > b`.  The merge sign of `self ⌢ other` into
    /// ascending order is `(−1)` to this count.
    pub fn inversions(self, other: Self) -> u32 {
        other.iter().map(|b| (self.0 >> b).count_ones()).sum()
    }

    pub fn iter(self) -> impl Iterator<Item = u8> {
        (1..=MAX_DIM).filter(move |&j| self.contains(j))
    }

    pub fn to_vec(self) -> Vec<u8> {
        self.iter().collect()
    }

    /// All k-element subsets of `{1, …, n}` in lexicographic mask order.
    pub fn subsets(n: u8, k: u32) -> Vec<IndexSet> {
        let mut out = Vec::new();
        for mask in 0u16..(1 << n) {
            if mask.count_ones() == k {
                out.push(IndexSet(mask));
            }
        }
        out
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in self.iter() {
            write!(f, "{j}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// ---------------------------------------------------------------------------
// MultiIndexPair
// ---------------------------------------------------------------------------

/// The monomial `φ^{I J̄}`: holomorphic index set `I`, anti-holomorphic `J`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MultiIndexPair {
    pub hol: IndexSet,
    pub anti: IndexSet,
}

impl MultiIndexPair {
    pub fn new(hol: IndexSet, anti: IndexSet) -> Self {
        MultiIndexPair { hol, anti }
    }

    pub fn scalar() -> Self {
        MultiIndexPair { hol: IndexSet::empty(), anti: IndexSet::empty() }
    }

    pub fn bidegree(&self) -> (u32, u32) {
        (self.hol.len(), self.anti.len())
    }

    /// Monomial literal: `a12~34` for `φ^{12 3̄4̄}`, `1` for the empty pair.
    pub fn literal(&self) -> String {
        if self.hol.is_empty() && self.anti.is_empty() {
            return "1".into();
        }
        let mut s = String::from("a");
        for j in self.hol.iter() {
            s.push((b'0' + j) as char);
        }
        if !self.anti.is_empty() {
            s.push('~');
            for j in self.anti.iter() {
                s.push((b'0' + j) as char);
            }
        }
        s
    }
}

impl fmt::Display for MultiIndexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.literal())
    }
}

// ---------------------------------------------------------------------------
// Form
// ---------------------------------------------------------------------------

/// A sparse exterior form over the coframe `{φ¹,…,φⁿ, φ̄¹,…,φ̄ⁿ}`.
///
/// No zero coefficients are stored, so structural equality is equality of
/// forms.  The scalar type is generic: Gauss rationals for invariant forms,
/// analytic scalars when coefficients depend on the distinguished complex
/// coordinate, `C64` for numeric shadows.
#[derive(Clone, PartialEq)]
pub struct Form<S: Scalar> {
    n: u8,
    coeffs: BTreeMap<MultiIndexPair, S>,
}

impl<S: Scalar> Form<S> {
    pub fn zero(n: u8) -> Self {
        assert!(n >= 1 && n <= MAX_DIM, "dimension {n} out of range");
        Form { n, coeffs: BTreeMap::new() }
    }

    /// The constant form `c` (bidegree (0,0)).
    pub fn scalar(n: u8, c: S) -> Self {
        let mut f = Self::zero(n);
        f.insert(MultiIndexPair::scalar(), c);
        f
    }

    pub fn one(n: u8) -> Self {
        Self::scalar(n, S::one())
    }

    /// `c · φ^{I J̄}` from arbitrary index lists, with the canonical
    /// reordering sign applied; repeated indices give the zero form.
    pub fn monomial(n: u8, hol: &[u8], anti: &[u8], c: S) -> Self {
        let mut f = Self::zero(n);
        for &j in hol.iter().chain(anti) {
            assert!(j >= 1 && j <= n, "index {j} out of range for dimension {n}");
        }
        let Some((ih, neg_h)) = IndexSet::sort_with_sign(hol) else {
            return f;
        };
        let Some((ia, neg_a)) = IndexSet::sort_with_sign(anti) else {
            return f;
        };
        let c = if neg_h != neg_a { c.neg() } else { c };
        f.insert(MultiIndexPair::new(ih, ia), c);
        f
    }

    /// The coframe element `φ^j`.
    pub fn coframe(n: u8, j: u8) -> Self {
        Self::monomial(n, &[j], &[], S::one())
    }

    /// The conjugate coframe element `φ̄^j`.
    pub fn coframe_bar(n: u8, j: u8) -> Self {
        Self::monomial(n, &[], &[j], S::one())
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndexPair, &S)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of a monomial (zero when absent).
    pub fn coefficient(&self, idx: &MultiIndexPair) -> S {
        self.coeffs.get(idx).cloned().unwrap_or_else(S::zero)
    }

    fn insert(&mut self, idx: MultiIndexPair, c: S) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(idx) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// The bidegree when homogeneous (`None` for mixed or zero forms).
    pub fn bidegree(&self) -> Option<(u32, u32)> {
        let mut it = self.coeffs.keys();
        let first = it.next()?.bidegree();
        it.all(|k| k.bidegree() == first).then_some(first)
    }

    /// The total degree when all monomials share it (zero form: `None`).
    pub fn total_degree(&self) -> Option<u32> {
        let mut it = self.coeffs.keys();
        let first = it.next().map(|k| k.hol.len() + k.anti.len())?;
        it.all(|k| k.hol.len() + k.anti.len() == first).then_some(first)
    }

    /// The component of bidegree `(p, q)`.
    pub fn bigraded_part(&self, p: u32, q: u32) -> Self {
        let mut out = Self::zero(self.n);
        for (idx, c) in &self.coeffs {
            if idx.bidegree() == (p, q) {
                out.insert(*idx, c.clone());
            }
        }
        out
    }

    /// Split into homogeneous components, keyed by bidegree.
    pub fn bigraded_components(&self) -> Vec<((u32, u32), Self)> {
        let mut map: BTreeMap<(u32, u32), Self> = BTreeMap::new();
        for (idx, c) in &self.coeffs {
            map.entry(idx.bidegree())
                .or_insert_with(|| Self::zero(self.n))
                .insert(*idx, c.clone());
        }
        map.into_iter().collect()
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.n);
        for (idx, t) in &self.coeffs {
            out.insert(*idx, t.mul(c));
        }
        out
    }

    pub fn scale_q(&self, r: &Q) -> Self {
        self.scale(&S::from_gauss(&GaussRational::from_rational(r.clone())))
    }

    /// Multiplication by `i`.
    pub fn mul_i(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (idx, c) in &self.coeffs {
            out.insert(*idx, c.mul_i());
        }
        out
    }

    /// Exterior product with the canonical-order sign convention.
    ///
    /// For monomials, `(φ^{I₁}φ̄^{J₁}) ∧ (φ^{I₂}φ̄^{J₂})` vanishes on index
    /// overlap and otherwise acquires `(−1)^{|J₁||I₂|}` for moving `φ^{I₂}`
    /// past `φ̄^{J₁}`, times the two merge signs.  Degrees past `(n,n)`
    /// cannot occur: overlapping masks vanish first.
    pub fn wedge(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "wedge of forms over different coframes");
        let mut out = Self::zero(self.n);
        for (a, ca) in &self.coeffs {
            for (b, cb) in &rhs.coeffs {
                if a.hol.intersects(b.hol) || a.anti.intersects(b.anti) {
                    continue;
                }
                let mut flips = a.anti.len() * b.hol.len();
                flips += a.hol.inversions(b.hol);
                flips += a.anti.inversions(b.anti);
                let mut c = ca.mul(cb);
                if flips % 2 == 1 {
                    c = c.neg();
                }
                out.insert(
                    MultiIndexPair::new(a.hol.union(b.hol), a.anti.union(b.anti)),
                    c,
                );
            }
        }
        out
    }

    /// The k-fold wedge power.
    pub fn wedge_pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.n);
        for _ in 0..k {
            acc = acc.wedge(self);
        }
        acc
    }

    /// Complex conjugation: `conj(φ^{I J̄}) = (−1)^{|I||J|} φ^{J Ī}` with the
    /// coefficient conjugated.  An involution.
    pub fn conjugate(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (idx, c) in &self.coeffs {
            let flips = idx.hol.len() * idx.anti.len();
            let mut c = c.conj();
            if flips % 2 == 1 {
                c = c.neg();
            }
            out.insert(MultiIndexPair::new(idx.anti, idx.hol), c);
        }
        out
    }

    /// True when the form equals its own conjugate (a real form).
    pub fn is_real(&self) -> bool {
        *self == self.conjugate()
    }

    /// Extract `c` with `self = c · vol_n`, where
    /// `vol_n := i^{n²} φ^{1…n} ∧ φ̄^{1…n}`.
    ///
    /// Rejects forms with any monomial outside the top bidegree `(n, n)`.
    pub fn vol_coefficient(&self) -> Result<S, ExteriorError> {
        let full = MultiIndexPair::new(IndexSet::full(self.n), IndexSet::full(self.n));
        for idx in self.coeffs.keys() {
            if *idx != full {
                return Err(ExteriorError::NotTopDegree {
                    found_p: idx.hol.len(),
                    found_q: idx.anti.len(),
                    n: self.n,
                });
            }
        }
        // self = c·φ^{full full} = c·i^{−n²}·vol_n.
        let c = self.coefficient(&full);
        let inv_pow = (4 - (u32::from(self.n) * u32::from(self.n)) % 4) % 4;
        let mut c = c;
        for _ in 0..inv_pow {
            c = c.mul_i();
        }
        Ok(c)
    }

    /// Interior product with a frame vector, extended as a graded derivation
    /// of degree −1.
    pub fn contract(&self, v: &Vector<S>) -> Self {
        assert_eq!(self.n, v.n, "contraction over different frames");
        let mut out = Self::zero(self.n);
        for (idx, c) in &self.coeffs {
            for j in idx.hol.iter() {
                let comp = &v.hol[usize::from(j) - 1];
                if comp.is_zero() {
                    continue;
                }
                let mut t = c.mul(comp);
                if idx.hol.rank(j) % 2 == 1 {
                    t = t.neg();
                }
                out.insert(MultiIndexPair::new(idx.hol.remove(j), idx.anti), t);
            }
            for j in idx.anti.iter() {
                let comp = &v.anti[usize::from(j) - 1];
                if comp.is_zero() {
                    continue;
                }
                let mut t = c.mul(comp);
                if (idx.hol.len() + idx.anti.rank(j)) % 2 == 1 {
                    t = t.neg();
                }
                out.insert(MultiIndexPair::new(idx.hol, idx.anti.remove(j)), t);
            }
        }
        out
    }

    /// Map coefficients into another scalar ring, dropping zeros.
    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Form<T> {
        let mut out = Form::<T>::zero(self.n);
        for (idx, c) in &self.coeffs {
            out.insert(*idx, f(c));
        }
        out
    }

    /// Numeric shadow at a point of the coordinate line.
    pub fn eval_u(&self, u: C64) -> Form<C64> {
        self.map_scalars(|c| {
            let v = c.eval(u);
            if v.norm() == 0.0 {
                C64::new(0.0, 0.0)
            } else {
                v
            }
        })
    }

    /// Largest coefficient magnitude of the numeric shadow.
    pub fn max_abs_eval(&self, u: C64) -> f64 {
        self.coeffs.values().map(|c| c.eval(u).norm()).fold(0.0, f64::max)
    }

    /// All monomials of bidegree `(p, q)` over `{1, …, n}`, in canonical
    /// (mask-lexicographic) order.
    pub fn basis(n: u8, p: u32, q: u32) -> Vec<MultiIndexPair> {
        let mut out = Vec::new();
        for hol in IndexSet::subsets(n, p) {
            for anti in IndexSet::subsets(n, q) {
                out.push(MultiIndexPair::new(hol, anti));
            }
        }
        out
    }

    /// Coordinates with respect to [`Form::basis`] of the same bidegree.
    /// `None` if some monomial falls outside that bidegree.
    pub fn coordinates(&self, basis: &[MultiIndexPair]) -> Option<Vec<S>> {
        let positions: BTreeMap<MultiIndexPair, usize> =
            basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let mut coords = vec![S::zero(); basis.len()];
        for (idx, c) in &self.coeffs {
            coords[*positions.get(idx)?] = c.clone();
        }
        Some(coords)
    }

    /// Rebuild a form from coordinates in a monomial basis.
    pub fn from_coordinates(n: u8, basis: &[MultiIndexPair], coords: &[S]) -> Self {
        assert_eq!(basis.len(), coords.len());
        let mut out = Self::zero(n);
        for (idx, c) in basis.iter().zip(coords) {
            out.insert(*idx, c.clone());
        }
        out
    }
}

impl<S: Scalar> std::ops::Add<&Form<S>> for &Form<S> {
    type Output = Form<S>;
    fn add(self, rhs: &Form<S>) -> Form<S> {
        assert_eq!(self.n, rhs.n, "sum of forms over different coframes");
        let mut out = self.clone();
        for (idx, c) in &rhs.coeffs {
            out.insert(*idx, c.clone());
        }
        out
    }
}

impl<S: Scalar> std::ops::Sub<&Form<S>> for &Form<S> {
    type Output = Form<S>;
    fn sub(self, rhs: &Form<S>) -> Form<S> {
        self + &(-rhs)
    }
}

impl<S: Scalar> std::ops::Neg for &Form<S> {
    type Output = Form<S>;
    fn neg(self) -> Form<S> {
        let mut out = Form::zero(self.n);
        for (idx, c) in &self.coeffs {
            out.insert(*idx, c.neg());
        }
        out
    }
}

impl<S: Scalar> fmt::Display for Form<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (idx, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = format!("{c}");
            let mono = idx.literal();
            if mono == "1" {
                write!(f, "{cs}")?;
            } else if cs == "1" {
                write!(f, "{mono}")?;
            } else if cs.contains(" + ") {
                write!(f, "({cs}) {mono}")?;
            } else {
                write!(f, "{cs} {mono}")?;
            }
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for Form<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Errors from exterior-algebra operations with domain restrictions.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExteriorError {
    #[error("expected a top-degree ({n},{n}) form, found a ({found_p},{found_q}) monomial")]
    NotTopDegree { found_p: u32, found_q: u32, n: u8 },
}

// ---------------------------------------------------------------------------
// Vectors
// ---------------------------------------------------------------------------

/// A frame vector `Σ aʲ Z_j + Σ bʲ Z̄_j`, where `{Z_j, Z̄_j}` is the frame
/// dual to the coframe `{φ^j, φ̄^j}`.
#[derive(Clone, PartialEq, Debug)]
pub struct Vector<S: Scalar> {
    n: u8,
    pub hol: Vec<S>,
    pub anti: Vec<S>,
}

impl<S: Scalar> Vector<S> {
    pub fn new(n: u8, hol: Vec<S>, anti: Vec<S>) -> Self {
        assert!(n >= 1 && n <= MAX_DIM);
        assert_eq!(hol.len(), usize::from(n));
        assert_eq!(anti.len(), usize::from(n));
        Vector { n, hol, anti }
    }

    /// The frame vector `Z_j`.
    pub fn z(n: u8, j: u8) -> Self {
        let mut hol = vec![S::zero(); usize::from(n)];
        hol[usize::from(j) - 1] = S::one();
        Vector::new(n, hol, vec![S::zero(); usize::from(n)])
    }

    /// The conjugate frame vector `Z̄_j`.
    pub fn z_bar(n: u8, j: u8) -> Self {
        let mut anti = vec![S::zero(); usize::from(n)];
        anti[usize::from(j) - 1] = S::one();
        Vector::new(n, vec![S::zero(); usize::from(n)], anti)
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    /// Conjugate vector: swaps the `Z` and `Z̄` components and conjugates.
    pub fn conjugate(&self) -> Self {
        Vector {
            n: self.n,
            hol: self.anti.iter().map(S::conj).collect(),
            anti: self.hol.iter().map(S::conj).collect(),
        }
    }
}

// ---------------------------------------------------------------------------
// Standard forms
// ---------------------------------------------------------------------------

/// The standard Kähler form `i Σ_j φ^{j j̄}` on `ℂⁿ`.
pub fn standard_kaehler<S: Scalar>(n: u8) -> Form<S> {
    let mut f = Form::zero(n);
    for j in 1..=n {
        f = &f + &Form::monomial(n, &[j], &[j], S::one().mul_i());
    }
    f
}

/// The reference volume form `vol_n := i^{n²} φ^{1…n} ∧ φ̄^{1…n}`, the
/// positive top form with `vol_coefficient(vol_n) = 1`.
pub fn volume_form<S: Scalar>(n: u8) -> Form<S> {
    let mut c = S::one();
    for _ in 0..(u32::from(n) * u32::from(n)) % 4 {
        c = c.mul_i();
    }
    let all: Vec<u8> = (1..=n).collect();
    Form::monomial(n, &all, &all, c)
}

/// The Lefschetz operator: wedge with a fixed (1,1)-form.
pub fn lefschetz<S: Scalar>(omega: &Form<S>, a: &Form<S>) -> Form<S> {
    omega.wedge(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;
    use crate::scalar::{q, qi, AnalyticScalar};
    use proptest::prelude::*;

    type GForm = Form<GaussRational>;

    fn gi() -> GaussRational {
        GaussRational::i()
    }

    // Brute-force oracle: a monomial as a list of letters (hol j ↦ j,
    // anti j ↦ j + 10); sorting by adjacent transpositions counts the sign.
    fn oracle_sort(letters: &[u8]) -> Option<(Vec<u8>, bool)> {
        let mut v = letters.to_vec();
        let mut neg = false;
        // Bubble sort, counting swaps.
        let mut swapped = true;
        while swapped {
            swapped = false;
            for i in 1..v.len() {
                if v[i - 1] > v[i] {
                    v.swap(i - 1, i);
                    neg = !neg;
                    swapped = true;
                }
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((v, neg))
    }

    fn letters(idx: &MultiIndexPair) -> Vec<u8> {
        idx.hol.iter().chain(idx.anti.iter().map(|j| j + 10)).collect()
    }

    #[test]
    fn wedge_basic_identities() {
        let n = 3;
        let p1 = GForm::coframe(n, 1);
        let p2 = GForm::coframe(n, 2);
        assert_eq!(p1.wedge(&p2), GForm::monomial(n, &[1, 2], &[], GaussRational::one()));
        assert!(p1.wedge(&p1).is_zero());
        // φ² ∧ φ¹ = −φ^{12}
        assert_eq!(p2.wedge(&p1), GForm::monomial(n, &[1, 2], &[], -GaussRational::one()));
    }

    #[test]
    fn monomial_constructor_sorts_with_sign() {
        let n = 4;
        // φ^{21 3̄} = −φ^{12 3̄}
        assert_eq!(
            GForm::monomial(n, &[2, 1], &[3], GaussRational::one()),
            GForm::monomial(n, &[1, 2], &[3], -GaussRational::one())
        );
        // repeated index vanishes
        assert!(GForm::monomial(n, &[1, 1], &[], GaussRational::one()).is_zero());
    }

    #[test]
    fn wedge_matches_brute_force_sign_oracle() {
        // Compare every product of bidegree-(≤2) monomials in n = 3 against
        // the letter-sorting oracle.
        let n = 3u8;
        let mut monos: Vec<MultiIndexPair> = Vec::new();
        for p in 0..=2 {
            for qd in 0..=2 {
                monos.extend(GForm::basis(n, p, qd));
            }
        }
        for a in &monos {
            for b in &monos {
                let fa = GForm::from_coordinates(n, &[*a], &[GaussRational::one()]);
                let fb = GForm::from_coordinates(n, &[*b], &[GaussRational::one()]);
                let prod = fa.wedge(&fb);
                let mut cat = letters(a);
                cat.extend(letters(b));
                match oracle_sort(&cat) {
                    None => assert!(prod.is_zero(), "expected zero: {a} ∧ {b}"),
                    Some((sorted, neg)) => {
                        let hol: Vec<u8> =
                            sorted.iter().copied().filter(|&x| x <= 10).collect();
                        let anti: Vec<u8> = sorted
                            .iter()
                            .copied()
                            .filter(|&x| x > 10)
                            .map(|x| x - 10)
                            .collect();
                        let c = if neg { -GaussRational::one() } else { GaussRational::one() };
                        let expected = GForm::monomial(n, &hol, &anti, c);
                        assert_eq!(prod, expected, "mismatch at {a} ∧ {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn conjugation_examples() {
        let n = 4;
        // conj(φ¹) = φ̄¹
        assert_eq!(GForm::coframe(n, 1).conjugate(), GForm::coframe_bar(n, 1));
        // i φ^{1 1̄} is real
        let f = GForm::monomial(n, &[1], &[1], gi());
        assert!(f.is_real());
        // conj(u e^U φ^{12 3̄4̄}) = ū e^U φ^{34 1̄2̄}
        let c = &AnalyticScalar::var_u() * &AnalyticScalar::exp_u(1);
        let f = Form::monomial(n, &[1, 2], &[3, 4], c);
        let cbar = &AnalyticScalar::var_ubar() * &AnalyticScalar::exp_u(1);
        assert_eq!(f.conjugate(), Form::monomial(n, &[3, 4], &[1, 2], cbar));
        // involution on a mixed form
        let g = &GForm::monomial(n, &[1, 2], &[3], gi()) + &GForm::coframe_bar(n, 2);
        assert_eq!(g.conjugate().conjugate(), g);
    }

    #[test]
    fn contraction_examples() {
        let n = 3;
        let z1 = Vector::<GaussRational>::z(n, 1);
        // ι_{Z₁} φ¹ = 1
        assert_eq!(GForm::coframe(n, 1).contract(&z1), GForm::one(n));
        // ι_{Z₁} φ^{2 1̄} = 0
        assert!(GForm::monomial(n, &[2], &[1], GaussRational::one())
            .contract(&z1)
            .is_zero());
        // ι_{Z₁} φ^{12} = φ²
        assert_eq!(
            GForm::monomial(n, &[1, 2], &[], GaussRational::one()).contract(&z1),
            GForm::coframe(n, 2)
        );
        // ι_{Z̄₁} φ^{2 1̄} = −φ² (one holomorphic factor to cross)
        let z1b = Vector::<GaussRational>::z_bar(n, 1);
        assert_eq!(
            GForm::monomial(n, &[2], &[1], GaussRational::one()).contract(&z1b),
            &GForm::zero(n) - &GForm::coframe(n, 2)
        );
    }

    #[test]
    fn volume_extraction() {
        // n = 4: i¹⁶ = 1, so vol₄ = φ^{1234 1̄2̄3̄4̄} exactly.
        let f = GForm::monomial(4, &[1, 2, 3, 4], &[1, 2, 3, 4], GaussRational::one());
        assert_eq!(f.vol_coefficient().unwrap(), GaussRational::one());
        // zero form extracts zero
        assert_eq!(GForm::zero(4).vol_coefficient().unwrap(), GaussRational::zero());
        // non-top monomials are rejected
        let bad = GForm::coframe(4, 1);
        assert!(bad.vol_coefficient().is_err());
        // vol_n extracts 1 for every n
        for n in 2..=5 {
            assert_eq!(
                volume_form::<GaussRational>(n).vol_coefficient().unwrap(),
                GaussRational::one()
            );
        }
    }

    #[test]
    fn standard_metric_volume_identity() {
        // vol_coefficient(Fⁿ/n!) = 1 for the standard Kähler form.
        for n in 2u8..=4 {
            let f = standard_kaehler::<GaussRational>(n);
            let mut fact = qi(1);
            for k in 2..=i64::from(n) {
                fact *= qi(k);
            }
            let top = f.wedge_pow(u32::from(n)).scale_q(&(qi(1) / fact));
            assert_eq!(top.vol_coefficient().unwrap(), GaussRational::one(), "n = {n}");
        }
    }

    #[test]
    fn lefschetz_examples() {
        let n = 3;
        let omega = standard_kaehler::<GaussRational>(n);
        assert_eq!(lefschetz(&omega, &GForm::one(n)), omega);
        assert_eq!(lefschetz(&omega, &GForm::coframe(n, 1)), omega.wedge(&GForm::coframe(n, 1)));
    }

    #[test]
    fn lefschetz_rank_and_primitive_kernel() {
        // Injectivity of ω^{n−p−q} on Λ^{p,q} for the standard form, n ≤ 4.
        for n in 2u8..=4 {
            let omega = standard_kaehler::<GaussRational>(n);
            for p in 0..=u32::from(n) {
                for qd in 0..=u32::from(n) {
                    if p + qd > u32::from(n) {
                        continue;
                    }
                    let power = omega.wedge_pow(u32::from(n) - p - qd);
                    let dom = GForm::basis(n, p, qd);
                    let img_basis = GForm::basis(n, p + (u32::from(n) - p - qd), qd + (u32::from(n) - p - qd));
                    let mut cols = Vec::new();
                    for m in &dom {
                        let e = GForm::from_coordinates(n, &[*m], &[GaussRational::one()]);
                        let img = power.wedge(&e);
                        cols.push(img.coordinates(&img_basis).unwrap());
                    }
                    let rank = linalg::rank_gauss(&transpose(&cols));
                    assert_eq!(rank, dom.len(), "ω^{{n-p-q}} not injective at n={n} ({p},{qd})");
                }
            }
        }
        // The primitivity kernel: ω^{n-p-q+1} on Λ^{1,1}, n = 3, has
        // kernel dimension 8 (the primitive (1,1)-forms).
        let n = 3u8;
        let omega = standard_kaehler::<GaussRational>(n);
        let power = omega.wedge_pow(2);
        let dom = GForm::basis(n, 1, 1);
        let img_basis = GForm::basis(n, 3, 3);
        let mut cols = Vec::new();
        for m in &dom {
            let e = GForm::from_coordinates(n, &[*m], &[GaussRational::one()]);
            cols.push(power.wedge(&e).coordinates(&img_basis).unwrap());
        }
        let rank = linalg::rank_gauss(&transpose(&cols));
        assert_eq!(dom.len() - rank, 8);
    }

    fn transpose(cols: &[Vec<GaussRational>]) -> Vec<Vec<GaussRational>> {
        let rows = cols.first().map_or(0, Vec::len);
        (0..rows)
            .map(|r| cols.iter().map(|c| c[r].clone()).collect())
            .collect()
    }

    fn arb_monomial(n: u8) -> impl Strategy<Value = (MultiIndexPair, GaussRational)> {
        let masks = 0u16..(1 << n);
        (masks.clone(), masks, -3i64..4, -3i64..4).prop_map(|(h, a, re, im)| {
            (
                MultiIndexPair::new(IndexSet(h), IndexSet(a)),
                GaussRational::new(q(re, 1), q(im, 1)),
            )
        })
    }

    fn arb_homogeneous(n: u8) -> impl Strategy<Value = Form<GaussRational>> {
        (0u32..=u32::from(n), 0u32..=u32::from(n)).prop_flat_map(move |(p, qd)| {
            let basis = GForm::basis(n, p, qd);
            let len = basis.len();
            proptest::collection::vec(-3i64..4, len).prop_map(move |cs| {
                let coords: Vec<GaussRational> =
                    cs.iter().map(|&c| GaussRational::from_int(c)).collect();
                GForm::from_coordinates(n, &basis, &coords)
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn wedge_graded_anticommutative(a in arb_homogeneous(3), b in arb_homogeneous(3)) {
            let ab = a.wedge(&b);
            let ba = b.wedge(&a);
            let da = a.total_degree().unwrap_or(0);
            let db = b.total_degree().unwrap_or(0);
            let expected = if (da * db) % 2 == 1 { -&ba } else { ba };
            prop_assert_eq!(ab, expected);
        }

        #[test]
        fn conjugation_distributes_over_wedge(a in arb_homogeneous(3), b in arb_homogeneous(3)) {
            prop_assert_eq!(a.wedge(&b).conjugate(), a.conjugate().wedge(&b.conjugate()));
        }

        #[test]
        fn wedge_associative(
            (a, ca) in arb_monomial(3),
            (b, cb) in arb_monomial(3),
            (c, cc) in arb_monomial(3),
        ) {
            let n = 3;
            let fa = GForm::from_coordinates(n, &[a], &[ca]);
            let fb = GForm::from_coordinates(n, &[b], &[cb]);
            let fc = GForm::from_coordinates(n, &[c], &[cc]);
            prop_assert_eq!(fa.wedge(&fb).wedge(&fc), fa.wedge(&fb.wedge(&fc)));
        }

        #[test]
        fn contraction_is_graded_derivation(
            a in arb_homogeneous(3),
            b in arb_homogeneous(3),
            j in 1u8..=3,
            bar in proptest::bool::ANY,
        ) {
            let v = if bar {
                Vector::<GaussRational>::z_bar(3, j)
            } else {
                Vector::<GaussRational>::z(3, j)
            };
            let lhs = a.wedge(&b).contract(&v);
            let da = a.total_degree().unwrap_or(0);
            let sign_term = a.wedge(&b.contract(&v));
            let signed = if da % 2 == 1 { -&sign_term } else { sign_term };
            let rhs = &a.contract(&v).wedge(&b) + &signed;
            prop_assert_eq!(lhs, rhs);
        }
    }
}
