//! Lie algebras with complex structures, presented by structure equations
//! on the invariant (1,0)-coframe.
//!
//! A [`ComplexLieAlgebra`] of complex dimension `n` is given by the
//! differentials `dα^j` of its coframe, each a 2-form in
//! `Λ^{2,0} ⊕ Λ^{1,1} ⊕ Λ^{0,2}` with exact coefficients.  Validation
//! certifies the two standing assumptions: integrability (no `(0,2)` part in
//! any `dα^j`) and the Jacobi identity (`d² = 0` on the coframe, hence
//! everywhere by the derivation property).
//!
//! The Chevalley–Eilenberg differential extends to forms with
//! coordinate-dependent coefficients through
//! [`DifferentiableScalar`]: when the algebra carries a distinguished
//! coordinate direction `k` (a closed coframe element `φ^k = du`), the
//! differential gains the terms `(∂c/∂u) φ^k ∧ M + (∂c/∂ū) φ̄^k ∧ M`.
//!
//! Real structure constants, unimodularity, nilpotency, commutator ideals
//! and codimension-two ideals are all derived mechanically from the complex
//! presentation: the coframe is the single source of truth.

use crate::exterior::{Form, IndexSet, MultiIndexPair, Vector};
use crate::linalg::{self, QMatrix};
use crate::scalar::{DifferentiableScalar, GaussRational, Scalar};
use crate::Verdict;

/// A Lie algebra with a complex structure, given by `dα^j` on the
/// (1,0)-coframe `α¹, …, αⁿ`.
#[derive(Clone, PartialEq, Debug)]
pub struct ComplexLieAlgebra {
    n: u8,
    d_alpha: Vec<Form<GaussRational>>,
    /// Coframe index whose dual coordinate the analytic coefficients depend
    /// on; `dα` must vanish there (the coordinate differential is closed).
    analytic_direction: Option<u8>,
}

/// Successful validation: integrable and Jacobi-closed.
#[derive(Clone, Debug, PartialEq)]
pub struct Validated {
    pub n: u8,
}

/// Validation counterexample: the failing coframe element and its residual.
#[derive(Clone, Debug, PartialEq)]
pub struct ValidationFailure {
    pub coframe_index: u8,
    pub kind: ValidationFailureKind,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ValidationFailureKind {
    /// `dα^j` has a nonzero (0,2) component (the complex structure is not
    /// integrable); carries that component.
    NonIntegrable(Form<GaussRational>),
    /// `d(dα^j) ≠ 0` (the Jacobi identity fails); carries the residual.
    JacobiFailure(Form<GaussRational>),
}

impl ComplexLieAlgebra {
    /// Build from structure equations.  Each `d_alpha[j]` must be a 2-form
    /// over indices `1..=n`; no mathematical validation happens here — see
    /// [`ComplexLieAlgebra::validate`].
    pub fn new(n: u8, d_alpha: Vec<Form<GaussRational>>) -> Self {
        assert_eq!(d_alpha.len(), usize::from(n), "one structure equation per coframe element");
        for (j, da) in d_alpha.iter().enumerate() {
            assert_eq!(da.n(), n, "structure equation {} over wrong coframe", j + 1);
            for (idx, _) in da.terms() {
                let (p, q) = idx.bidegree();
                assert_eq!(p + q, 2, "dα^{} must be a 2-form", j + 1);
            }
        }
        ComplexLieAlgebra { n, d_alpha, analytic_direction: None }
    }

    /// The abelian algebra (all structure equations zero).
    pub fn abelian(n: u8) -> Self {
        Self::new(n, (0..n).map(|_| Form::zero(n)).collect())
    }

    /// Declare that coefficients may depend on the coordinate dual to
    /// `φ^k`; requires `dα^k = 0` so that the coordinate differential is
    /// closed.
    pub fn with_analytic_direction(mut self, k: u8) -> Self {
        assert!(k >= 1 && k <= self.n);
        assert!(
            self.d_alpha[usize::from(k) - 1].is_zero(),
            "the analytic direction must be a closed coframe element"
        );
        self.analytic_direction = Some(k);
        self
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn analytic_direction(&self) -> Option<u8> {
        self.analytic_direction
    }

    /// The structure equation `dα^j`.
    pub fn structure_equation(&self, j: u8) -> &Form<GaussRational> {
        &self.d_alpha[usize::from(j) - 1]
    }

    // -----------------------------------------------------------------------
    // Validation
    // -----------------------------------------------------------------------

    /// Certify integrability and the Jacobi identity.
    pub fn validate(&self) -> Verdict<Validated, ValidationFailure> {
        for j in 1..=self.n {
            let bad = self.structure_equation(j).bigraded_part(0, 2);
            if !bad.is_zero() {
                return Verdict::Refuted(ValidationFailure {
                    coframe_index: j,
                    kind: ValidationFailureKind::NonIntegrable(bad),
                });
            }
        }
        for j in 1..=self.n {
            let dd = self.d(self.structure_equation(j));
            if !dd.is_zero() {
                return Verdict::Refuted(ValidationFailure {
                    coframe_index: j,
                    kind: ValidationFailureKind::JacobiFailure(dd),
                });
            }
        }
        Verdict::Proven(Validated { n: self.n })
    }

    // -----------------------------------------------------------------------
    // The Chevalley–Eilenberg differential
    // -----------------------------------------------------------------------

    /// The exterior differential, extended from the structure equations by
    /// the Leibniz rule, plus the coefficient differential along the
    /// analytic direction when one is declared.
    pub fn d<S: DifferentiableScalar>(&self, a: &Form<S>) -> Form<S> {
        assert_eq!(a.n(), self.n);
        let n = self.n;
        let mut out = Form::zero(n);
        for (idx, c) in a.terms() {
            if let Some(k) = self.analytic_direction {
                if let Some((cu, cub)) = c.wirtinger() {
                    let m = Form::from_coordinates(n, &[*idx], &[S::one()]);
                    if !cu.is_zero() {
                        out = &out + &Form::coframe(n, k).scale(&cu).wedge(&m);
                    }
                    if !cub.is_zero() {
                        out = &out + &Form::coframe_bar(n, k).scale(&cub).wedge(&m);
                    }
                }
            }
            for j in idx.hol.iter() {
                let da = &self.d_alpha[usize::from(j) - 1];
                if da.is_zero() {
                    continue;
                }
                let mut coef = c.clone();
                if idx.hol.rank(j) % 2 == 1 {
                    coef = coef.neg();
                }
                let rest = Form::from_coordinates(
                    n,
                    &[MultiIndexPair::new(idx.hol.remove(j), idx.anti)],
                    &[coef],
                );
                out = &out + &da.map_scalars(S::from_gauss).wedge(&rest);
            }
            for j in idx.anti.iter() {
                let da = &self.d_alpha[usize::from(j) - 1];
                if da.is_zero() {
                    continue;
                }
                let mut coef = c.clone();
                if (idx.hol.len() + idx.anti.rank(j)) % 2 == 1 {
                    coef = coef.neg();
                }
                let rest = Form::from_coordinates(
                    n,
                    &[MultiIndexPair::new(idx.hol, idx.anti.remove(j))],
                    &[coef],
                );
                out = &out + &da.conjugate().map_scalars(S::from_gauss).wedge(&rest);
            }
        }
        out
    }

    /// The (1,0)-part of the differential: on a (p,q)-component it is the
    /// projection of `d` onto bidegree (p+1, q).
    pub fn del<S: DifferentiableScalar>(&self, a: &Form<S>) -> Form<S> {
        let mut out = Form::zero(self.n);
        for ((p, q), comp) in a.bigraded_components() {
            out = &out + &self.d(&comp).bigraded_part(p + 1, q);
        }
        out
    }

    /// The (0,1)-part of the differential.
    pub fn delbar<S: DifferentiableScalar>(&self, a: &Form<S>) -> Form<S> {
        let mut out = Form::zero(self.n);
        for ((p, q), comp) in a.bigraded_components() {
            out = &out + &self.d(&comp).bigraded_part(p, q + 1);
        }
        out
    }

    // -----------------------------------------------------------------------
    // Brackets and the real frame
    // -----------------------------------------------------------------------

    /// The Lie bracket of frame vectors, recovered from the structure
    /// equations by `α([X, Y]) = −dα(X, Y)` for invariant one-forms.
    pub fn bracket(
        &self,
        v: &Vector<GaussRational>,
        w: &Vector<GaussRational>,
    ) -> Vector<GaussRational> {
        let n = self.n;
        let origin = MultiIndexPair::scalar();
        let mut hol = Vec::with_capacity(usize::from(n));
        let mut anti = Vec::with_capacity(usize::from(n));
        for j in 1..=n {
            let da = self.structure_equation(j);
            hol.push(da.contract(v).contract(w).coefficient(&origin).neg());
            anti.push(
                da.conjugate().contract(v).contract(w).coefficient(&origin).neg(),
            );
        }
        Vector::new(n, hol, anti)
    }

    /// The real frame `X₁, Y₁, …, X_n, Y_n` with `X_j = Z_j + Z̄_j` and
    /// `Y_j = i(Z_j − Z̄_j)`; the complex structure acts by `J X_j = Y_j`,
    /// `J Y_j = −X_j`.
    pub fn real_frame(&self) -> Vec<Vector<GaussRational>> {
        let n = self.n;
        let mut out = Vec::with_capacity(2 * usize::from(n));
        for j in 1..=n {
            let mut hol = vec![GaussRational::zero(); usize::from(n)];
            let mut anti = vec![GaussRational::zero(); usize::from(n)];
            hol[usize::from(j) - 1] = GaussRational::one();
            anti[usize::from(j) - 1] = GaussRational::one();
            out.push(Vector::new(n, hol, anti));
            let mut hol = vec![GaussRational::zero(); usize::from(n)];
            let mut anti = vec![GaussRational::zero(); usize::from(n)];
            hol[usize::from(j) - 1] = GaussRational::i();
            anti[usize::from(j) - 1] = -GaussRational::i();
            out.push(Vector::new(n, hol, anti));
        }
        out
    }

    /// Coordinates of a real vector in the real frame
    /// (`[x₁, y₁, …, x_n, y_n]` with `v = Σ x_j X_j + y_j Y_j`).
    /// `None` when the vector is not real.
    pub fn real_coordinates(&self, v: &Vector<GaussRational>) -> Option<Vec<GaussRational>> {
        let n = usize::from(self.n);
        let half = GaussRational::from_rational(crate::scalar::q(1, 2));
        let mut coords = Vec::with_capacity(2 * n);
        for j in 0..n {
            let h = &v.hol[j];
            let a = &v.anti[j];
            // v = Σ h Z + a Z̄ with Z = (X − iY)/2:
            // x = (h + a)/2, y = i(a − h)/2.
            let x = &(h + a) * &half;
            let y = &(a - h).mul_i() * &half;
            if !x.is_real() || !y.is_real() {
                return None;
            }
            coords.push(x);
            coords.push(y);
        }
        Some(coords)
    }

    /// Rebuild a frame vector from real coordinates.
    pub fn vector_from_real(&self, coords: &[GaussRational]) -> Vector<GaussRational> {
        let n = usize::from(self.n);
        assert_eq!(coords.len(), 2 * n);
        let mut hol = Vec::with_capacity(n);
        let mut anti = Vec::with_capacity(n);
        for j in 0..n {
            let x = &coords[2 * j];
            let y = &coords[2 * j + 1];
            // v = x(Z + Z̄) + y·i(Z − Z̄) = (x + iy) Z + (x − iy) Z̄.
            hol.push(x + &y.mul_i());
            anti.push(x - &y.mul_i());
        }
        Vector::new(self.n, hol, anti)
    }

    /// The complex structure in real coordinates: `J(x X_j + y Y_j) = x Y_j − y X_j`.
    pub fn apply_j(&self, coords: &[GaussRational]) -> Vec<GaussRational> {
        let n = usize::from(self.n);
        let mut out = vec![GaussRational::zero(); 2 * n];
        for j in 0..n {
            out[2 * j] = coords[2 * j + 1].neg();
            out[2 * j + 1] = coords[2 * j].clone();
        }
        out
    }

    /// Bracket in real coordinates.
    pub fn bracket_real(&self, a: &[GaussRational], b: &[GaussRational]) -> Vec<GaussRational> {
        let va = self.vector_from_real(a);
        let vb = self.vector_from_real(b);
        self.real_coordinates(&self.bracket(&va, &vb))
            .expect("bracket of real vectors is real")
    }

    /// True iff `trace(ad_X) = 0` for every `X`, computed from the real
    /// structure constants.
    pub fn is_unimodular(&self) -> bool {
        let frame = self.real_frame();
        let coords: Vec<Vec<GaussRational>> = frame
            .iter()
            .map(|v| self.real_coordinates(v).expect("frame vectors are real"))
            .collect();
        for a in &coords {
            let mut trace = GaussRational::zero();
            for (b_idx, b) in coords.iter().enumerate() {
                let br = self.bracket_real(a, b);
                trace = &trace + &br[b_idx];
            }
            if !trace.is_zero() {
                return false;
            }
        }
        true
    }

    /// Basis (in real coordinates) of the commutator ideal `[g, g]`.
    pub fn commutator_subalgebra(&self) -> Vec<Vec<GaussRational>> {
        let frame = self.real_frame();
        let coords: Vec<Vec<GaussRational>> = frame
            .iter()
            .map(|v| self.real_coordinates(v).unwrap())
            .collect();
        let mut rows = Vec::new();
        for i in 0..coords.len() {
            for j in i + 1..coords.len() {
                let br = self.bracket_real(&coords[i], &coords[j]);
                if br.iter().any(|c| !c.is_zero()) {
                    rows.push(br);
                }
            }
        }
        span_basis(&rows)
    }

    /// Is the commutator ideal invariant under the complex structure?
    /// `Refuted` carries a commutator vector whose `J`-image leaves the
    /// ideal.
    pub fn commutator_j_invariant(&self) -> Verdict<JInvariantCommutator, JWitness> {
        let basis = self.commutator_subalgebra();
        for w in &basis {
            let jw = self.apply_j(w);
            if linalg::in_span(&basis, &jw).is_none() {
                return Verdict::Refuted(JWitness { vector: w.clone(), j_image: jw });
            }
        }
        Verdict::Proven(JInvariantCommutator { dim: basis.len() })
    }

    /// Nilpotency via the lower central series `g ⊇ [g,g] ⊇ [g,[g,g]] ⊇ …`.
    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series_dims().last() == Some(&0)
    }

    /// Real dimensions of the lower central series, starting from `[g,g]`,
    /// until it stabilizes.
    pub fn lower_central_series_dims(&self) -> Vec<usize> {
        let frame: Vec<Vec<GaussRational>> = self
            .real_frame()
            .iter()
            .map(|v| self.real_coordinates(v).unwrap())
            .collect();
        let mut dims = Vec::new();
        let mut current = frame.clone();
        loop {
            let mut rows = Vec::new();
            for a in &frame {
                for w in &current {
                    let br = self.bracket_real(a, w);
                    if br.iter().any(|c| !c.is_zero()) {
                        rows.push(br);
                    }
                }
            }
            let next = span_basis(&rows);
            let dim = next.len();
            dims.push(dim);
            if dim == 0 || Some(&dim) == dims.get(dims.len().wrapping_sub(2)) {
                break;
            }
            current = next;
        }
        dims
    }

    /// Does every structure equation lie in `Λ^{1,1}` (abelian complex
    /// structure)?
    pub fn is_abelian_j(&self) -> bool {
        (1..=self.n).all(|j| self.structure_equation(j).bigraded_part(2, 0).is_zero())
    }

    /// Is the algebra complex-parallelizable (every `dα^j` of bidegree
    /// (2,0))?
    pub fn is_complex_parallelizable(&self) -> bool {
        (1..=self.n).all(|j| {
            let da = self.structure_equation(j);
            (&da.bigraded_part(1, 1) + &da.bigraded_part(0, 2)).is_zero()
        })
    }

    // -----------------------------------------------------------------------
    // Coframe changes and adapted bases
    // -----------------------------------------------------------------------

    /// The algebra presented in the new coframe `β^t = Σ_j P[t][j] α^j`
    /// (`P` invertible).
    pub fn change_coframe(&self, p: &QMatrix) -> ComplexLieAlgebra {
        assert!(self.analytic_direction.is_none(), "coframe changes are for invariant algebras");
        let n = self.n;
        let p_inv = linalg::inverse(p).expect("coframe change must be invertible");
        let mut d_beta = Vec::with_capacity(usize::from(n));
        for t in 0..usize::from(n) {
            let mut db = Form::zero(n);
            for j in 0..usize::from(n) {
                if p[t][j].is_zero() {
                    continue;
                }
                db = &db + &self.d_alpha[j].scale(&p[t][j]);
            }
            d_beta.push(linear_substitution(&db, &p_inv));
        }
        ComplexLieAlgebra::new(n, d_beta)
    }

    /// A coframe adapted to the `∂`-filtration of a nilpotent algebra:
    /// in the returned presentation, `∂β^t ∈ Λ²⟨β¹, …, β^{t−1}⟩` for every
    /// `t` (in particular `∂β¹ = 0`).  Returns the re-presented algebra and
    /// the change-of-coframe matrix rows (`β^t = Σ_j P[t][j] α^j`).
    pub fn nilpotent_adapted_basis(
        &self,
    ) -> Result<(ComplexLieAlgebra, QMatrix), AdaptedBasisError> {
        if !self.is_nilpotent() {
            return Err(AdaptedBasisError::NotNilpotent);
        }
        let n = usize::from(self.n);
        let basis20 = Form::<GaussRational>::basis(self.n, 2, 0);
        // ∂ as a matrix: column j holds the Λ^{2,0}-coordinates of ∂α^j.
        let del_matrix: Vec<Vec<GaussRational>> = {
            let cols: Vec<Vec<GaussRational>> = (1..=self.n)
                .map(|j| {
                    self.structure_equation(j)
                        .bigraded_part(2, 0)
                        .coordinates(&basis20)
                        .unwrap()
                })
                .collect();
            (0..basis20.len())
                .map(|r| cols.iter().map(|c| c[r].clone()).collect())
                .collect()
        };
        // Ascending filtration: V₀ = ker ∂, V_k = ∂⁻¹(Λ²V_{k−1}).
        let mut chosen: Vec<Vec<GaussRational>> = Vec::new();
        let mut v_prev: Vec<Vec<GaussRational>> = Vec::new();
        for _round in 0..=n {
            // Span of wedge products of the current filtration stage, in
            // Λ^{2,0} coordinates.
            let mut wedge_cols: Vec<Vec<GaussRational>> = Vec::new();
            for (i, a) in v_prev.iter().enumerate() {
                for b in v_prev.iter().skip(i + 1) {
                    let fa = one_form(self.n, a);
                    let fb = one_form(self.n, b);
                    let w = fa.wedge(&fb);
                    let coords = w.coordinates(&basis20).unwrap();
                    if coords.iter().any(|c| !c.is_zero()) {
                        wedge_cols.push(coords);
                    }
                }
            }
            // Solve ∂x ∈ span(wedge_cols): kernel of [∂ | −W] projected to x.
            let rows = basis20.len();
            let aug: Vec<Vec<GaussRational>> = (0..rows)
                .map(|r| {
                    let mut row = del_matrix[r].clone();
                    for w in &wedge_cols {
                        row.push(w[r].neg());
                    }
                    row
                })
                .collect();
            let kernel = linalg::kernel_basis(&aug);
            let stage: Vec<Vec<GaussRational>> =
                kernel.into_iter().map(|k| k[..n].to_vec()).collect();
            let stage = span_basis(&stage);
            // Extend the chosen basis by the new directions of this stage.
            let before = chosen.len();
            for cand in &stage {
                if linalg::in_span(&chosen, cand).is_none() {
                    chosen.push(cand.clone());
                }
            }
            if chosen.len() == n {
                break;
            }
            if chosen.len() == before && !v_prev.is_empty() && stage.len() == v_prev.len() {
                return Err(AdaptedBasisError::FiltrationStalled);
            }
            v_prev = stage;
        }
        if chosen.len() != n {
            return Err(AdaptedBasisError::FiltrationStalled);
        }
        let p: QMatrix = chosen;
        let adapted = self.change_coframe(&p);
        Ok((adapted, p))
    }

    /// The codimension-two subspace cut out by a closed (1,0)-form:
    /// `ker α ∩ ker ᾱ`, with its `J`-invariance and ideal property
    /// re-certified from brackets.
    pub fn ideal_from_closed_oneform(
        &self,
        alpha: &Form<GaussRational>,
    ) -> Result<CodimTwoIdeal, OneFormError> {
        if alpha.is_zero() {
            return Err(OneFormError::ZeroForm);
        }
        if alpha.bidegree() != Some((1, 0)) {
            return Err(OneFormError::NotBidegreeOneZero);
        }
        let da = self.d(alpha);
        if !da.is_zero() {
            return Err(OneFormError::NotClosed(da));
        }
        let n = usize::from(self.n);
        // α(v) for real v with coordinates (x_j, y_j):
        // v's Z_j-component is x_j + i y_j, and α(v) = Σ a_j (x_j + i y_j).
        // α(v) = 0 is two real equations (real and imaginary part).
        let a_coeffs: Vec<GaussRational> = (1..=self.n)
            .map(|j| alpha.coefficient(&MultiIndexPair::new(IndexSet::from_ascending(&[j]), IndexSet::empty())))
            .collect();
        let mut re_row = Vec::with_capacity(2 * n);
        let mut im_row = Vec::with_capacity(2 * n);
        for a in &a_coeffs {
            // coefficient of x_j is a_j, of y_j is i·a_j
            re_row.push(GaussRational::from_rational(a.re().clone()));
            re_row.push(GaussRational::from_rational(-a.im().clone()));
            im_row.push(GaussRational::from_rational(a.im().clone()));
            im_row.push(GaussRational::from_rational(a.re().clone()));
        }
        let basis = linalg::kernel_basis(&[re_row, im_row]);
        let j_invariant = basis
            .iter()
            .all(|w| linalg::in_span(&basis, &self.apply_j(w)).is_some());
        let frame: Vec<Vec<GaussRational>> = self
            .real_frame()
            .iter()
            .map(|v| self.real_coordinates(v).unwrap())
            .collect();
        let is_ideal = basis.iter().all(|w| {
            frame
                .iter()
                .all(|e| linalg::in_span(&basis, &self.bracket_real(e, w)).is_some())
        });
        Ok(CodimTwoIdeal {
            basis: basis.clone(),
            real_codimension: 2 * n - basis.len(),
            j_invariant,
            is_ideal,
        })
    }
}

/// A (1,0)-form from coefficient vector `x`: `Σ x_j α^j`.
fn one_form(n: u8, x: &[GaussRational]) -> Form<GaussRational> {
    let mut f = Form::zero(n);
    for (j, c) in x.iter().enumerate() {
        if !c.is_zero() {
            f = &f + &Form::monomial(n, &[j as u8 + 1], &[], c.clone());
        }
    }
    f
}

/// Row-reduce a spanning set to a canonical basis (nonzero rows of the
/// reduced echelon form).
fn span_basis(rows: &[Vec<GaussRational>]) -> Vec<Vec<GaussRational>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let (r, pivots) = linalg::rref(rows);
    r.into_iter().take(pivots.len()).collect()
}

/// Apply the linear coframe substitution `φ^j ↦ Σ_k M[j][k] φ^k`
/// (and conjugates on the anti-holomorphic side) to a form.
pub fn linear_substitution<S: Scalar>(a: &Form<S>, m: &QMatrix) -> Form<S> {
    let n = a.n();
    let mut out = Form::zero(n);
    for (idx, c) in a.terms() {
        let mut acc = Form::scalar(n, c.clone());
        for j in idx.hol.iter() {
            let mut img = Form::zero(n);
            for k in 1..=n {
                let coef = &m[usize::from(j) - 1][usize::from(k) - 1];
                if !coef.is_zero() {
                    img = &img + &Form::monomial(n, &[k], &[], S::from_gauss(coef));
                }
            }
            acc = acc.wedge(&img);
        }
        for j in idx.anti.iter() {
            let mut img = Form::zero(n);
            for k in 1..=n {
                let coef = m[usize::from(j) - 1][usize::from(k) - 1].conj();
                if !coef.is_zero() {
                    img = &img + &Form::monomial(n, &[], &[k], S::from_gauss(&coef));
                }
            }
            acc = acc.wedge(&img);
        }
        out = &out + &acc;
    }
    out
}

/// Proof payload: the commutator ideal is `J`-invariant.
#[derive(Clone, Debug, PartialEq)]
pub struct JInvariantCommutator {
    pub dim: usize,
}

/// Refutation payload: a commutator vector whose `J`-image leaves `[g,g]`.
#[derive(Clone, Debug, PartialEq)]
pub struct JWitness {
    pub vector: Vec<GaussRational>,
    pub j_image: Vec<GaussRational>,
}

/// The codimension-two subspace attached to a closed (1,0)-form.
#[derive(Clone, Debug, PartialEq)]
pub struct CodimTwoIdeal {
    /// Basis in real-frame coordinates.
    pub basis: Vec<Vec<GaussRational>>,
    pub real_codimension: usize,
    pub j_invariant: bool,
    pub is_ideal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AdaptedBasisError {
    #[error("the algebra is not nilpotent")]
    NotNilpotent,
    #[error("the filtration by iterated kernels stalled before exhausting the coframe")]
    FiltrationStalled,
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum OneFormError {
    #[error("the one-form is zero")]
    ZeroForm,
    #[error("expected a (1,0)-form")]
    NotBidegreeOneZero,
    #[error("the one-form is not closed")]
    NotClosed(Form<GaussRational>),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::{qi, AnalyticScalar};
    use proptest::prelude::*;

    fn gr(n: i64) -> GaussRational {
        GaussRational::from_int(n)
    }

    #[test]
    fn validation_examples() {
        assert!(ComplexLieAlgebra::abelian(3).validate().is_proven());
        assert!(catalog::iwasawa().validate().is_proven());
        // A (0,2) image is non-integrable.
        let n = 3;
        let mut d = vec![Form::zero(n); 3];
        d[1] = Form::monomial(n, &[], &[1, 2], gr(1));
        let g = ComplexLieAlgebra::new(n, d);
        match g.validate() {
            Verdict::Refuted(f) => {
                assert_eq!(f.coframe_index, 2);
                assert!(matches!(f.kind, ValidationFailureKind::NonIntegrable(_)));
            }
            other => panic!("expected refutation, got {other}"),
        }
        // A Jacobi failure: dα¹ = α^{2 2̄}, dα² = α^{3 3̄} gives d²α¹ ≠ 0.
        let mut d = vec![Form::zero(n); 3];
        d[0] = Form::monomial(n, &[2], &[2], gr(1));
        d[1] = Form::monomial(n, &[3], &[3], gr(1));
        let g = ComplexLieAlgebra::new(n, d);
        match g.validate() {
            Verdict::Refuted(f) => {
                assert_eq!(f.coframe_index, 1);
                assert!(matches!(f.kind, ValidationFailureKind::JacobiFailure(_)));
            }
            other => panic!("expected refutation, got {other}"),
        }
    }

    #[test]
    fn iwasawa_differential() {
        let g = catalog::iwasawa();
        let a3 = Form::<GaussRational>::coframe(3, 3);
        let expected = Form::monomial(3, &[1, 2], &[], gr(-1));
        assert_eq!(g.d(&a3), expected);
        assert!(g.delbar(&a3).is_zero());
        assert_eq!(g.del(&a3), expected);
    }

    #[test]
    fn central_family_obstruction_image() {
        // dα¹ = dα² = 0, dα³ = i α^{1 1̄} (the l = 3 normal form, n = 4 with
        // dα⁴ = 0 as well): the 3-form 2i α^{2 2̄ 3} has differential
        // 2 α^{12 1̄2̄} — a positive multiple of a decomposable (2,2)-form.
        let n = 4;
        let mut d = vec![Form::zero(n); 4];
        d[2] = Form::monomial(n, &[1], &[1], GaussRational::i());
        let g = ComplexLieAlgebra::new(n, d);
        assert!(g.validate().is_proven());
        // β = 2i α² ∧ ᾱ² ∧ α³ = −2i φ^{23 2̄}
        let beta = Form::monomial(n, &[2, 3], &[2], GaussRational::i().neg()).scale(&gr(2));
        let expected = Form::monomial(n, &[1, 2], &[1, 2], gr(2));
        assert_eq!(g.d(&beta), expected);
    }

    #[test]
    fn central_family_l2_del_example() {
        // l = 2 normal form with parameters v₃, λ₃:
        // dα² = i α^{1 1̄}, dα³ = v₃ α^{1 1̄} − λ̄₃ α^{13} − λ₃ α^{3 1̄}.
        let n = 3;
        let v3 = GaussRational::new(qi(2), qi(1)); // 2 + i
        let l3 = GaussRational::new(qi(1), qi(-1)); // 1 − i
        let mut d = vec![Form::zero(n); 3];
        d[1] = Form::monomial(n, &[1], &[1], GaussRational::i());
        d[2] = &(&Form::monomial(n, &[1], &[1], v3.clone())
            - &Form::monomial(n, &[1, 3], &[], l3.conj()))
            - &Form::monomial(n, &[3], &[1], l3.clone());
        let g = ComplexLieAlgebra::new(n, d);
        assert!(g.validate().is_proven());
        // ∂(α^{3 2̄3̄}) = i α^{13 1̄3̄} + v̄₃ α^{13 1̄2̄}
        let a323 = Form::monomial(n, &[3], &[2, 3], gr(1));
        let expected = &Form::monomial(n, &[1, 3], &[1, 3], GaussRational::i())
            + &Form::monomial(n, &[1, 3], &[1, 2], v3.conj());
        assert_eq!(g.del(&a323), expected);
        // The corrected form β = α^{3 2̄3̄} + (v̄₃/λ̄₃) α^{3 1̄2̄} has
        // ∂β = i α^{13 1̄3̄} exactly.
        let corr = v3.conj().div_exact(&l3.conj()).unwrap();
        let beta = &a323 + &Form::monomial(n, &[3], &[1, 2], corr);
        assert_eq!(
            g.del(&beta),
            Form::monomial(n, &[1, 3], &[1, 3], GaussRational::i())
        );
    }

    #[test]
    fn unimodularity_examples() {
        assert!(catalog::iwasawa().is_unimodular());
        assert!(ComplexLieAlgebra::abelian(4).is_unimodular());
        // The affine algebra dα² = −α^{12} has trace(ad_{X₁}) = 2.
        let g = catalog::affine(2);
        assert!(g.validate().is_proven());
        assert!(!g.is_unimodular());
    }

    #[test]
    fn nilpotency_and_series() {
        assert!(catalog::iwasawa().is_nilpotent());
        assert!(ComplexLieAlgebra::abelian(2).is_nilpotent());
        // Iwasawa: [g,g] is the center, real dimension 2, then zero.
        assert_eq!(catalog::iwasawa().lower_central_series_dims(), vec![2, 0]);
        // A solvable non-nilpotent example: dα² = −α^{12} − α^{2 1̄}.
        let n = 2;
        let mut d = vec![Form::zero(n); 2];
        d[1] = &(-&Form::monomial(n, &[1, 2], &[], gr(1))) - &Form::monomial(n, &[2], &[1], gr(1));
        let g = ComplexLieAlgebra::new(n, d);
        assert!(g.validate().is_proven());
        assert!(!g.is_nilpotent());
    }

    #[test]
    fn commutator_j_invariance() {
        // Complex-parallelizable algebras have J-invariant commutators.
        let g = catalog::iwasawa();
        assert!(g.is_complex_parallelizable());
        match g.commutator_j_invariant() {
            Verdict::Proven(p) => assert_eq!(p.dim, 2),
            other => panic!("expected J-invariance, got {other}"),
        }
        // Abelian: trivially invariant.
        assert!(ComplexLieAlgebra::abelian(2).commutator_j_invariant().is_proven());
        // An abelian-J algebra with dα¹ = i α^{2 2̄} has g¹ = span{X₁},
        // which is not J-invariant.
        let g = catalog::abelian_structure_heisenberg();
        match g.commutator_j_invariant() {
            Verdict::Refuted(w) => {
                let jw_in = linalg::in_span(&g.commutator_subalgebra(), &w.j_image);
                assert!(jw_in.is_none());
            }
            other => panic!("expected refutation, got {other}"),
        }
    }

    #[test]
    fn abelian_j_detection() {
        assert!(!catalog::iwasawa().is_abelian_j());
        assert!(ComplexLieAlgebra::abelian(3).is_abelian_j());
        let n = 2;
        let mut d = vec![Form::zero(n); 2];
        d[1] = Form::monomial(n, &[1], &[1], gr(1));
        assert!(ComplexLieAlgebra::new(n, d).is_abelian_j());
    }

    #[test]
    fn adapted_basis_for_permuted_iwasawa() {
        // Present the Iwasawa algebra with the non-closed element first:
        // β¹ = α³, β² = α¹, β³ = α² i.e. dβ¹ = −β^{23}.
        let n = 3;
        let mut d = vec![Form::zero(n); 3];
        d[0] = Form::monomial(n, &[2, 3], &[], gr(-1));
        let g = ComplexLieAlgebra::new(n, d);
        assert!(g.validate().is_proven());
        let (adapted, p) = g.nilpotent_adapted_basis().unwrap();
        // The first two coframe elements of the adapted presentation are
        // closed, the last has ∂ in their span.
        assert!(adapted.structure_equation(1).is_zero());
        assert!(adapted.structure_equation(2).is_zero());
        let d3 = adapted.structure_equation(3);
        assert!(!d3.is_zero());
        assert_eq!(d3.bigraded_part(2, 0), d3.clone());
        // Only indices 1, 2 appear in ∂β³.
        for (idx, _) in d3.terms() {
            assert!(!idx.hol.contains(3));
        }
        assert_eq!(linalg::rank_gauss(&p), 3);
        // The identity-presented Iwasawa algebra is already adapted.
        let (adapted, _) = catalog::iwasawa().nilpotent_adapted_basis().unwrap();
        assert!(adapted.structure_equation(1).is_zero());
        assert!(adapted.structure_equation(2).is_zero());
        // Non-nilpotent input is rejected.
        let mut d = vec![Form::zero(2); 2];
        d[1] = Form::monomial(2, &[1, 2], &[], gr(1));
        let g = ComplexLieAlgebra::new(2, d);
        assert_eq!(g.nilpotent_adapted_basis().unwrap_err(), AdaptedBasisError::NotNilpotent);
    }

    #[test]
    fn codim_two_ideal_from_closed_form() {
        let g = catalog::iwasawa();
        let a1 = Form::<GaussRational>::coframe(3, 1);
        let ideal = g.ideal_from_closed_oneform(&a1).unwrap();
        assert_eq!(ideal.real_codimension, 2);
        assert!(ideal.j_invariant);
        assert!(ideal.is_ideal);
        // abelian: coordinate subspace, trivially an ideal
        let ab = ComplexLieAlgebra::abelian(2);
        let ideal = ab.ideal_from_closed_oneform(&Form::coframe(2, 1)).unwrap();
        assert_eq!(ideal.real_codimension, 2);
        assert!(ideal.j_invariant && ideal.is_ideal);
        // α³ on Iwasawa is not closed
        let a3 = Form::<GaussRational>::coframe(3, 3);
        assert!(matches!(
            g.ideal_from_closed_oneform(&a3),
            Err(OneFormError::NotClosed(_))
        ));
    }

    #[test]
    fn analytic_direction_differential() {
        // On the abelian line (n = 1, coordinate direction 1):
        // d(c) = (∂c/∂u) φ¹ + (∂c/∂ū) φ̄¹ for scalar coefficients.
        let g = ComplexLieAlgebra::abelian(1).with_analytic_direction(1);
        let c = AnalyticScalar::exp_u(1);
        let f = Form::scalar(1, c);
        let df = g.d(&f);
        let ubar_e = &AnalyticScalar::var_ubar() * &AnalyticScalar::exp_u(1);
        let u_e = &AnalyticScalar::var_u() * &AnalyticScalar::exp_u(1);
        let expected = &Form::monomial(1, &[1], &[], ubar_e)
            + &Form::monomial(1, &[], &[1], u_e);
        assert_eq!(df, expected);
        // d² = 0 on a sample analytic form.
        let sample = Form::monomial(
            1,
            &[1],
            &[],
            &AnalyticScalar::var_u() * &AnalyticScalar::exp_u(-2),
        );
        assert!(g.d(&g.d(&sample)).is_zero());
    }

    fn arb_invariant_form(n: u8) -> impl Strategy<Value = Form<GaussRational>> {
        (0u32..=u32::from(n), 0u32..=u32::from(n)).prop_flat_map(move |(p, q)| {
            let basis = Form::<GaussRational>::basis(n, p, q);
            let len = basis.len();
            proptest::collection::vec((-2i64..3, -2i64..3), len).prop_map(move |cs| {
                let coords: Vec<GaussRational> = cs
                    .iter()
                    .map(|&(re, im)| GaussRational::new(qi(re), qi(im)))
                    .collect();
                Form::from_coordinates(n, &basis, &coords)
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn differential_complex_identities(a in arb_invariant_form(3), pick in 0usize..4) {
            let algebras = [
                catalog::iwasawa(),
                ComplexLieAlgebra::abelian(3),
                catalog::abelian_structure_heisenberg(),
                catalog::solvable_skew_commutator(2),
            ];
            let g = &algebras[pick];
            // d = ∂ + ∂̄ and all four composite identities vanish.
            let d = g.d(&a);
            let del = g.del(&a);
            let delbar = g.delbar(&a);
            prop_assert_eq!(&d, &(&del + &delbar));
            prop_assert!(g.d(&d).is_zero());
            prop_assert!(g.del(&del).is_zero());
            prop_assert!(g.delbar(&delbar).is_zero());
            let mixed = &g.del(&delbar) + &g.delbar(&del);
            prop_assert!(mixed.is_zero());
            // d commutes with conjugation.
            prop_assert_eq!(g.d(&a.conjugate()), d.conjugate());
            // ∂ of a conjugate is the conjugate of ∂̄.
            prop_assert_eq!(g.del(&a.conjugate()), g.delbar(&a).conjugate());
        }
    }
}
