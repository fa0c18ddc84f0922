//! Built-in catalog of Lie algebras with complex structures.
//!
//! Fixed entries (tori, the Iwasawa algebra and its product with ℂ, nilpotent
//! towers, solvable examples) plus parameterized constructors: the family of
//! algebras with a `J`-invariant abelian ideal of real codimension two, and
//! seeded random generators used by the property suites.

use crate::exterior::Form;
use crate::lie_complex::ComplexLieAlgebra;
use crate::scalar::GaussRational;
use rand::Rng;

/// A named catalog entry.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub algebra: ComplexLieAlgebra,
}

/// The abelian algebra of complex dimension `n` (complex torus algebra).
pub fn torus(n: u8) -> ComplexLieAlgebra {
    ComplexLieAlgebra::abelian(n)
}

/// The complex Heisenberg algebra (`n = 3`): `dα³ = −α^{12}`.
pub fn iwasawa() -> ComplexLieAlgebra {
    let n = 3;
    let mut d = vec![Form::zero(n); 3];
    d[2] = Form::monomial(n, &[1, 2], &[], GaussRational::from_int(-1));
    ComplexLieAlgebra::new(n, d)
}

/// The complex Heisenberg algebra times ℂ (`n = 4`): `dφ³ = −φ^{12}`,
/// all other coframe elements closed.
pub fn iwasawa_times_c() -> ComplexLieAlgebra {
    let n = 4;
    let mut d = vec![Form::zero(n); 4];
    d[2] = Form::monomial(n, &[1, 2], &[], GaussRational::from_int(-1));
    ComplexLieAlgebra::new(n, d)
}

/// As [`iwasawa_times_c`], with analytic coefficients allowed along the
/// coordinate dual to `φ⁴`.
pub fn iwasawa_times_c_analytic() -> ComplexLieAlgebra {
    iwasawa_times_c().with_analytic_direction(4)
}

/// A complex-parallelizable 3-step nilpotent algebra (`n = 4`):
/// `dα³ = α^{12}`, `dα⁴ = α^{13}`.
pub fn nilpotent_step3() -> ComplexLieAlgebra {
    let n = 4;
    let mut d = vec![Form::zero(n); 4];
    d[2] = Form::monomial(n, &[1, 2], &[], GaussRational::from_int(1));
    d[3] = Form::monomial(n, &[1, 3], &[], GaussRational::from_int(1));
    ComplexLieAlgebra::new(n, d)
}

/// The real Heisenberg algebra times ℝ³ with an abelian complex structure
/// (`n = 3`): `dα¹ = i α^{2 2̄}`.  Non-abelian, nilpotent, `d(Λ^{1,0}) ⊂ Λ^{1,1}`.
pub fn abelian_structure_heisenberg() -> ComplexLieAlgebra {
    let n = 3;
    let mut d = vec![Form::zero(n); 3];
    d[0] = Form::monomial(n, &[2], &[2], GaussRational::i());
    ComplexLieAlgebra::new(n, d)
}

/// A complex-parallelizable solvable (non-nilpotent) algebra (`n = 3`):
/// `dα² = −α^{12}`, `dα³ = α^{13}`.
pub fn nakamura() -> ComplexLieAlgebra {
    let n = 3;
    let mut d = vec![Form::zero(n); 3];
    d[1] = Form::monomial(n, &[1, 2], &[], GaussRational::from_int(-1));
    d[2] = Form::monomial(n, &[1, 3], &[], GaussRational::from_int(1));
    ComplexLieAlgebra::new(n, d)
}

/// The complex affine algebra times ℂ^{n−2}: `dα² = −α^{12}`.  The simplest
/// non-unimodular example.
pub fn affine(n: u8) -> ComplexLieAlgebra {
    assert!(n >= 2);
    let mut d = vec![Form::zero(n); usize::from(n)];
    d[1] = Form::monomial(n, &[1, 2], &[], GaussRational::from_int(-1));
    ComplexLieAlgebra::new(n, d)
}

/// A unimodular solvable algebra whose commutator ideal is not `J`-invariant
/// (`n = 3`, real parameter `a ≠ 0`):
/// `dα¹ = −(a i/2) α^{1 1̄}`, `dα² = (a i/4)(α^{12} + α^{2 1̄})`, `dα³ = 0`.
pub fn solvable_skew_commutator(a: i64) -> ComplexLieAlgebra {
    assert!(a != 0);
    let n = 3;
    let half = GaussRational::new(crate::scalar::q(0, 1), crate::scalar::q(-a, 2));
    let quarter = GaussRational::new(crate::scalar::q(0, 1), crate::scalar::q(a, 4));
    let mut d = vec![Form::zero(n); 3];
    d[0] = Form::monomial(n, &[1], &[1], half);
    d[1] = &Form::monomial(n, &[1, 2], &[], quarter.clone())
        + &Form::monomial(n, &[2], &[1], quarter);
    ComplexLieAlgebra::new(n, d)
}

/// The family of algebras with a `J`-invariant abelian ideal of real
/// codimension two, in the normal form
///
/// `dα¹ = 0`, `dα^j = v_j α^{1 1̄} − λ̄_j α^{1j} − λ_j α^{j 1̄}` (j ≥ 2),
///
/// with parameters `v = (v₂, …, v_n)`, `λ = (λ₂, …, λ_n)`.  Every member is
/// unimodular and integrable.
pub fn abelian_ideal_family(
    v: &[GaussRational],
    lambda: &[GaussRational],
) -> ComplexLieAlgebra {
    assert_eq!(v.len(), lambda.len());
    let n = u8::try_from(v.len() + 1).expect("dimension fits in u8");
    assert!(n >= 2);
    let mut d = vec![Form::zero(n); usize::from(n)];
    for j in 2..=n {
        let vj = &v[usize::from(j) - 2];
        let lj = &lambda[usize::from(j) - 2];
        let mut dj = Form::zero(n);
        if !vj.is_zero() {
            dj = &dj + &Form::monomial(n, &[1], &[1], vj.clone());
        }
        if !lj.is_zero() {
            dj = &(&dj - &Form::monomial(n, &[1, j], &[], lj.conj()))
                - &Form::monomial(n, &[j], &[1], lj.clone());
        }
        d[usize::from(j) - 1] = dj;
    }
    ComplexLieAlgebra::new(n, d)
}

/// The fixed catalog.
pub fn catalog() -> Vec<CatalogEntry> {
    let one = GaussRational::one();
    let zero = GaussRational::zero();
    vec![
        CatalogEntry {
            name: "torus2",
            description: "abelian, n = 2",
            algebra: torus(2),
        },
        CatalogEntry {
            name: "torus3",
            description: "abelian, n = 3",
            algebra: torus(3),
        },
        CatalogEntry {
            name: "torus4",
            description: "abelian, n = 4",
            algebra: torus(4),
        },
        CatalogEntry {
            name: "torus5",
            description: "abelian, n = 5",
            algebra: torus(5),
        },
        CatalogEntry {
            name: "iwasawa",
            description: "complex Heisenberg algebra, n = 3: d a3 = -a1^a2",
            algebra: iwasawa(),
        },
        CatalogEntry {
            name: "iwasawa-c",
            description: "complex Heisenberg algebra times C, n = 4",
            algebra: iwasawa_times_c(),
        },
        CatalogEntry {
            name: "nilpotent-step3",
            description: "complex-parallelizable 3-step nilpotent, n = 4",
            algebra: nilpotent_step3(),
        },
        CatalogEntry {
            name: "heisenberg-abelian-j",
            description: "real Heisenberg times R^3 with abelian complex structure, n = 3",
            algebra: abelian_structure_heisenberg(),
        },
        CatalogEntry {
            name: "nakamura",
            description: "complex-parallelizable solvable non-nilpotent, n = 3",
            algebra: nakamura(),
        },
        CatalogEntry {
            name: "solvable-skew",
            description: "unimodular solvable with non-J-invariant commutator, n = 3",
            algebra: solvable_skew_commutator(2),
        },
        CatalogEntry {
            name: "abelian-ideal-kahler",
            description: "codimension-two abelian ideal family, Kaehler branch: v = 0, lambda = (0,1,1)",
            algebra: abelian_ideal_family(
                &[zero.clone(), zero.clone(), zero.clone()],
                &[zero.clone(), one.clone(), one.clone()],
            ),
        },
        CatalogEntry {
            name: "abelian-ideal-obstructed",
            description: "codimension-two abelian ideal family, obstructed branch: v = (i,0,0), lambda = 0",
            algebra: abelian_ideal_family(
                &[GaussRational::i(), zero.clone(), zero.clone()],
                &[zero.clone(), zero.clone(), zero.clone()],
            ),
        },
        CatalogEntry {
            name: "abelian-ideal-obstructed-l2",
            description: "codimension-two abelian ideal family, obstructed branch without closed directions: v = (i,1,0), lambda = (0,1,1)",
            algebra: abelian_ideal_family(
                &[GaussRational::i(), one.clone(), zero.clone()],
                &[zero, one.clone(), one],
            ),
        },
    ]
}

/// Look up a catalog entry by name.
pub fn find(name: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.name == name)
}

// ---------------------------------------------------------------------------
// Random generators (seeded by the caller; deterministic given the RNG)
// ---------------------------------------------------------------------------

fn small_coefficient<R: Rng>(rng: &mut R) -> GaussRational {
    let pick = |rng: &mut R| crate::scalar::qi([-1, 0, 0, 1][rng.gen_range(0..4)]);
    GaussRational::new(pick(rng), pick(rng))
}

/// A random validated non-abelian nilpotent algebra: the structure equations
/// only use coframe indices strictly below their own, so the lower central
/// series terminates; Jacobi and integrability are enforced by rejection.
pub fn random_nilpotent<R: Rng>(n: u8, rng: &mut R) -> ComplexLieAlgebra {
    assert!(n >= 3);
    'attempt: for _ in 0..200 {
        let mut d = vec![Form::zero(n); usize::from(n)];
        for j in 3..=n {
            let mut dj = Form::zero(n);
            if rng.gen_bool(0.75) {
                let l = rng.gen_range(2..j);
                let k = rng.gen_range(1..l);
                let c = small_coefficient(rng);
                if !c.is_zero() {
                    dj = &dj + &Form::monomial(n, &[k, l], &[], c);
                }
            }
            if rng.gen_bool(0.5) {
                let k = rng.gen_range(1..j);
                let l = rng.gen_range(1..j);
                let c = small_coefficient(rng);
                if !c.is_zero() {
                    dj = &dj + &Form::monomial(n, &[k], &[l], c);
                }
            }
            d[usize::from(j) - 1] = dj;
        }
        if d.iter().all(|f| f.is_zero()) {
            continue 'attempt;
        }
        let g = ComplexLieAlgebra::new(n, d);
        if g.validate().is_proven() && g.is_nilpotent() {
            return g;
        }
    }
    // Heisenberg-like fallback; always valid.
    let mut d = vec![Form::zero(n); usize::from(n)];
    d[usize::from(n) - 1] = Form::monomial(n, &[1, 2], &[], GaussRational::one());
    ComplexLieAlgebra::new(n, d)
}

/// A random validated unimodular algebra (nilpotent, codimension-two
/// abelian-ideal family, or a fixed solvable example).
pub fn random_unimodular<R: Rng>(n: u8, rng: &mut R) -> ComplexLieAlgebra {
    match rng.gen_range(0..4) {
        0 | 1 => random_nilpotent(n.max(3), rng),
        2 => {
            let m = usize::from(n.max(2)) - 1;
            let v: Vec<GaussRational> = (0..m).map(|_| small_coefficient(rng)).collect();
            let l: Vec<GaussRational> = (0..m).map(|_| small_coefficient(rng)).collect();
            abelian_ideal_family(&v, &l)
        }
        _ => {
            if n == 3 {
                [nakamura(), solvable_skew_commutator(2)][rng.gen_range(0..2)].clone()
            } else {
                random_nilpotent(n.max(3), rng)
            }
        }
    }
}
