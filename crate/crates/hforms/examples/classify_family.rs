//! Classify members of the codimension-two abelian-ideal family
//!
//!   dα¹ = 0,   dα^j = v_j α^{1 1̄} − λ̄_j α^{1j} − λ_j α^{j 1̄}   (j ≥ 2)
//!
//! into the trichotomy: abelian, Kähler with an explicit closed
//! positive-definite form, or obstructed with a verified rank-one witness
//! that also rules out every invariant Hodge–Riemann balanced structure.
//! The deciding pattern: a direction with `λ_j = 0` but `v_j ≠ 0` forces
//! the obstruction; otherwise an explicit Kähler form exists.
//!
//! Run with `cargo run --example classify_family`.

use hforms::obstructions::{classify_abelian_ideal_family, FamilyClass};
use hforms::scalar::{q, GaussRational};

fn main() {
    let z = GaussRational::zero;
    let one = GaussRational::one;
    let i_s = GaussRational::i;
    let g = |re: i64, im: i64| GaussRational::new(q(re, 1), q(im, 1));

    let points: Vec<(&str, Vec<GaussRational>, Vec<GaussRational>)> = vec![
        ("all parameters zero", vec![z(), z(), z()], vec![z(), z(), z()]),
        ("v = 0, λ = (0,1,1)", vec![z(), z(), z()], vec![z(), one(), one()]),
        ("v = (1,0,0), λ = (1,1,0)", vec![one(), z(), z()], vec![one(), one(), z()]),
        ("v = (i,2,0), λ = (1,1,1)", vec![i_s(), g(2, 0), z()], vec![one(), one(), one()]),
        ("v = (i,0,0), λ = 0", vec![i_s(), z(), z()], vec![z(), z(), z()]),
        ("v = (i,1,0), λ = (0,1,1)", vec![i_s(), one(), z()], vec![z(), one(), one()]),
        ("v = (0,2,0), λ = (1,0,1)", vec![z(), g(2, 0), z()], vec![one(), z(), one()]),
    ];

    for (label, v, lambda) in points {
        let classified = classify_abelian_ideal_family(&v, &lambda);
        println!("{label}:");
        match classified.class {
            FamilyClass::Abelian => println!("  abelian (a complex torus algebra)"),
            FamilyClass::Kaehler { form } => {
                println!("  Kähler; certified closed positive-definite form");
                println!("    F = {form}");
            }
            FamilyClass::Obstructed { witness } => {
                println!("  obstructed; verified witness:");
                for line in witness.proof_sketch().lines() {
                    println!("    {line}");
                }
            }
            FamilyClass::Undetermined { reason } => println!("  undetermined: {reason}"),
        }
        println!();
    }
}
