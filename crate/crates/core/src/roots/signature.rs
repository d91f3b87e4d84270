use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{check_triple, is_maximal_abelian_in, TripleReport};
use crate::error::{Error, Result};
use crate::exact::{common_denominator, hermite_normal_form, lattice_coordinates, QMatrix, Rational, RealSpan};
use crate::lie::{fingerprint, multi_fixed, Fingerprint, LinearAlgebraMap, RealFormAlgebra};

use super::datum::{
    lexicographic_functional, nilpotent_part, positive_system, rational_torus, root_decomposition, RestrictedRootDatum,
};

/// A multiplicative sign assignment on the roots, given by its values on a
/// `Z`-basis of the root lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Signature {
    /// Signs on the lattice basis.
    pub generators: Vec<i8>,
    /// Signs on `datum.roots`, in root order.
    pub values: Vec<i8>,
}

impl Signature {
    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&s| s == 1)
    }

    /// `ε(α+β) = ε(α)ε(β)` for `α, β, α+β ∈ Σ` and `ε(−α) = ε(α)`.
    pub fn is_multiplicative(&self, datum: &RestrictedRootDatum) -> bool {
        let roots = &datum.roots;
        for (i, a) in roots.iter().enumerate() {
            let neg: Vec<Rational> = a.values.iter().map(|x| -x).collect();
            if datum.find(&neg).is_some_and(|k| self.values[k] != self.values[i]) {
                return false;
            }
            for (j, b) in roots.iter().enumerate() {
                let s: Vec<Rational> = a.values.iter().zip(&b.values).map(|(x, y)| x + y).collect();
                if let Some(k) = datum.find(&s) {
                    if self.values[k] != self.values[i] * self.values[j] {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.generators.iter().map(|&x| if x > 0 { '+' } else { '-' }).collect();
        write!(f, "({s})")
    }
}

/// Integer coordinates of every root in an HNF basis of the root lattice.
pub fn root_lattice(datum: &RestrictedRootDatum) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let den = common_denominator(datum.roots.iter().flat_map(|r| r.values.iter()));
    let scaled: Vec<Vec<BigInt>> =
        datum.roots.iter().map(|r| r.values.iter().map(|x| x.numer() * (&den / x.denom())).collect()).collect();
    let hnf = hermite_normal_form(&scaled);
    let coords = scaled.iter().map(|v| lattice_coordinates(&hnf, v).expect("root lies in its own lattice")).collect();
    (hnf, coords)
}

/// All `2^k` signatures for a root lattice of rank `k`, trivial first.
pub fn signatures(datum: &RestrictedRootDatum) -> Vec<Signature> {
    let (hnf, coords) = root_lattice(datum);
    let k = hnf.len();
    (0..1usize << k)
        .map(|mask| {
            let generators: Vec<i8> = (0..k).map(|b| if mask >> b & 1 == 1 { -1 } else { 1 }).collect();
            let values = coords
                .iter()
                .map(|c| {
                    let odd = c.iter().zip(&generators).filter(|(x, &s)| s < 0 && x.is_odd()).count();
                    if odd % 2 == 0 {
                        1
                    } else {
                        -1
                    }
                })
                .collect();
            Signature { generators, values }
        })
        .collect()
}

/// The map `X ↦ ε(λ)X` on `g(a;λ)`, identity on `g(a;0)`.
pub fn sign_operator(datum: &RestrictedRootDatum, eps: &Signature, d: usize) -> Result<QMatrix> {
    let (b, sizes) = datum.adapted_basis(d);
    let mut diag = Vec::with_capacity(d);
    for (k, n) in sizes.iter().enumerate() {
        let s = eps.values.get(k).copied().unwrap_or(1);
        diag.extend(std::iter::repeat_n(Rational::from_integer(s as i64), *n));
    }
    let binv = b.inverse()?;
    Ok(b.mul(&QMatrix::diag(&diag)).mul(&binv))
}

/// `τ_ε(X) = ε(λ)τ(X)` for `X ∈ g(a;λ)`, certified as an involutive
/// automorphism.
pub fn tau_epsilon(
    g: &RealFormAlgebra,
    tau: &LinearAlgebraMap,
    eps: &Signature,
    datum: &RestrictedRootDatum,
) -> Result<LinearAlgebraMap> {
    if eps.is_trivial() {
        return Ok(tau.clone());
    }
    let s = sign_operator(datum, eps, g.dim())?;
    let m = LinearAlgebraMap::from_action(format!("{}_ε{eps}", tau.name), tau.action().mul(&s));
    m.check_involution()?;
    m.check_automorphism(g)?;
    Ok(m)
}

/// Root datum for the twist of `τ` along a slice of `g^{−θ,σ,−τ}`.
///
/// The torus is a maximal abelian subspace of `g^{−θ,σ,−τ}` with rational
/// spectrum; it must also be maximal abelian in `g^{−θ,−τ}`.
pub fn epsilon_datum(
    g: &RealFormAlgebra,
    tau: &LinearAlgebraMap,
    theta: &LinearAlgebraMap,
    sigma: &LinearAlgebraMap,
) -> Result<RestrictedRootDatum> {
    let part = multi_fixed(g, &[(theta, -1), (sigma, 1), (tau, -1)])?;
    let full = multi_fixed(g, &[(theta, -1), (tau, -1)])?;
    let a = rational_torus(g, &part)?;
    if !is_maximal_abelian_in(g, &a, &full) {
        return Err(Error::ConditionFailed("slice torus is not maximal abelian in g^{−θ,−τ}".into()));
    }
    root_decomposition(g, &a)
}

/// Evidence for one member `τ_ε` of the ε-family.
#[derive(Clone, Debug, Serialize)]
pub struct EpsilonReport {
    pub signature: String,
    pub multiplicative: bool,
    pub involution: bool,
    pub automorphism: bool,
    pub commutes_sigma: bool,
    pub commutes_theta: bool,
    /// `τ_ε = −id` on `a`.
    pub minus_on_torus: bool,
    pub triple: TripleReport,
    pub pass: bool,
}

/// Checks that `(σ, τ_ε)` keeps commutation and the rank equality, with
/// `σZ = −Z` carried over from `(σ, τ)`.
pub fn verify_twist(
    g: &RealFormAlgebra,
    sigma: &LinearAlgebraMap,
    tau: &LinearAlgebraMap,
    theta: &LinearAlgebraMap,
    z: &[Rational],
    datum: &RestrictedRootDatum,
    eps: &Signature,
) -> Result<EpsilonReport> {
    let multiplicative = eps.is_multiplicative(datum);
    let s = sign_operator(datum, eps, g.dim())?;
    let te = LinearAlgebraMap::from_action(format!("{}_ε", tau.name), tau.action().mul(&s));
    let involution = te.is_involution();
    let automorphism = te.check_automorphism(g).is_ok();
    let commutes_sigma = te.commutes_with(sigma);
    let commutes_theta = te.commutes_with(theta);
    let minus_on_torus = datum.a.basis().iter().all(|h| {
        let neg: Vec<Rational> = h.iter().map(|x| -x).collect();
        te.apply(h) == neg
    });
    let triple = if involution {
        check_triple(g, &te, theta, sigma, z)?
    } else {
        TripleReport {
            commute: false,
            non_commuting: vec![],
            rank_pair: 0,
            rank_sigma: 0,
            rank_equal: false,
            slice_maximal: false,
            sigma_anti: false,
            pass: false,
        }
    };
    let pass = multiplicative
        && involution
        && automorphism
        && commutes_sigma
        && commutes_theta
        && minus_on_torus
        && triple.pass;
    Ok(EpsilonReport {
        signature: eps.to_string(),
        multiplicative,
        involution,
        automorphism,
        commutes_sigma,
        commutes_theta,
        minus_on_torus,
        triple,
        pass,
    })
}

/// Triple checks for every signature of the slice root system of `(σ, τ)`.
#[derive(Clone, Debug, Serialize)]
pub struct EpsilonFamilyReport {
    pub torus_dim: usize,
    pub root_count: usize,
    pub lattice_rank: usize,
    /// `σ` stabilizes every root space and `n₊`.
    pub sigma_stabilizes: bool,
    pub members: Vec<EpsilonReport>,
    pub pass: bool,
}

pub fn verify_epsilon_family(
    g: &RealFormAlgebra,
    sigma: &LinearAlgebraMap,
    tau: &LinearAlgebraMap,
    theta: &LinearAlgebraMap,
    z: &[Rational],
) -> Result<EpsilonFamilyReport> {
    let datum = epsilon_datum(g, tau, theta, sigma)?;
    let sigs = signatures(&datum);
    let members =
        sigs.par_iter().map(|e| verify_twist(g, sigma, tau, theta, z, &datum, e)).collect::<Result<Vec<_>>>()?;
    let stab = |s: &RealSpan| s.basis().iter().all(|v| s.contains(&sigma.apply(v)));
    let mut sigma_stabilizes = datum.roots.iter().all(|r| stab(&r.space));
    if !datum.roots.is_empty() {
        let pos = positive_system(&datum, &lexicographic_functional(&datum))?;
        sigma_stabilizes &= stab(&nilpotent_part(g, &datum, &pos)?);
    }
    let pass = datum.is_complete(g.dim()) && datum.is_symmetric() && sigma_stabilizes && members.iter().all(|m| m.pass);
    Ok(EpsilonFamilyReport {
        torus_dim: datum.rank(),
        root_count: datum.roots.len(),
        lattice_rank: sigs.len().trailing_zeros() as usize,
        sigma_stabilizes,
        members,
        pass,
    })
}

/// One member of a `K_ε`-family: the signature and the fingerprint of
/// `g^{θ_ε}`.
#[derive(Clone, Debug, Serialize)]
pub struct KEpsilonMember {
    pub signature: String,
    pub fingerprint: Fingerprint,
}

/// `K_ε`-family of `(g, θ)`: twists of `θ` along a rational torus of `p`.
pub fn k_epsilon_family(g: &RealFormAlgebra, theta: &LinearAlgebraMap, p: &RealSpan) -> Result<Vec<KEpsilonMember>> {
    let a = rational_torus(g, p)?;
    let datum = root_decomposition(g, &a)?;
    signatures(&datum)
        .par_iter()
        .map(|e| {
            let te = tau_epsilon(g, theta, e, &datum)?;
            let h = multi_fixed(g, &[(&te, 1)])?;
            Ok(KEpsilonMember { signature: e.to_string(), fingerprint: fingerprint(g, &h, theta)? })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realizations::{build, characteristic_element, expected_fingerprint, Family};

    fn datum_of(f: Family) -> (crate::realizations::Realization, RestrictedRootDatum) {
        let r = build(&f, 8).unwrap();
        let a = rational_torus(&r.algebra, &r.p).unwrap();
        let d = root_decomposition(&r.algebra, &a).unwrap();
        (r, d)
    }

    #[test]
    fn signature_counts() {
        let (_, d) = datum_of(Family::SlR { n: 2 });
        assert_eq!(signatures(&d).len(), 2);
        let (_, d) = datum_of(Family::Su { p: 2, q: 1 });
        let sigs = signatures(&d);
        assert_eq!(sigs.len(), 2);
        for s in &sigs {
            assert!(s.is_multiplicative(&d));
            for (r, v) in d.roots.iter().zip(&s.values) {
                if r.dim() == 1 {
                    assert_eq!(*v, 1, "ε(2λ) = ε(λ)² = 1");
                }
            }
        }
        let (_, d) = datum_of(Family::SpR { n: 2 });
        let sigs = signatures(&d);
        assert_eq!(sigs.len(), 4);
        assert!(sigs[0].is_trivial());
        assert!(sigs.iter().all(|s| s.is_multiplicative(&d)));
    }

    #[test]
    fn trivial_signature_returns_tau() {
        let (r, d) = datum_of(Family::SpR { n: 2 });
        let t = tau_epsilon(&r.algebra, &r.theta, &signatures(&d)[0], &d).unwrap();
        assert_eq!(t.action(), r.theta.action());
    }

    #[test]
    fn sl2_split_twist() {
        let (r, d) = datum_of(Family::SlR { n: 2 });
        let fam = k_epsilon_family(&r.algebra, &r.theta, &r.p).unwrap();
        let fps: Vec<_> = fam.iter().map(|m| m.fingerprint).collect();
        let ex = |s: &str| expected_fingerprint(s, &Default::default()).unwrap();
        assert_eq!(fps, vec![ex("so(2)"), ex("so(1,1)")]);
        let te = tau_epsilon(&r.algebra, &r.theta, &signatures(&d)[1], &d).unwrap();
        let h = multi_fixed(&r.algebra, &[(&te, 1)]).unwrap();
        assert_eq!(h.dim(), 1);
        assert_eq!(fingerprint(&r.algebra, &h, &r.theta).unwrap(), ex("so(1,1)"));
    }

    #[test]
    fn sl3_k_epsilon_family() {
        let r = build(&Family::SlR { n: 3 }, 8).unwrap();
        let fam = k_epsilon_family(&r.algebra, &r.theta, &r.p).unwrap();
        assert_eq!(fam.len(), 4);
        let ex = |s: &str| expected_fingerprint(s, &Default::default()).unwrap();
        let mut set: Vec<_> = fam.iter().map(|m| m.fingerprint).collect();
        set.dedup();
        assert!(set.contains(&ex("so(3)")) && set.contains(&ex("so(2,1)")));
        assert!(fam.iter().all(|m| m.fingerprint == ex("so(3)") || m.fingerprint == ex("so(2,1)")));
    }

    #[test]
    fn rank_zero_family() {
        let r = build(&Family::SuCompact { m: 2 }, 8).unwrap();
        let fam = k_epsilon_family(&r.algebra, &r.theta, &r.p).unwrap();
        assert_eq!(fam.len(), 1);
    }

    #[test]
    fn sp2_twists_all_signatures() {
        let r = build(&Family::SpR { n: 2 }, 8).unwrap();
        let g = &r.algebra;
        let z = characteristic_element(g, &r.theta).unwrap();
        // τ = θ with σ from the catalog pair of the Cartan case.
        let sigma = LinearAlgebraMap::from_recipe(g, &crate::realizations::table3_sigma(&r.family).unwrap()).unwrap();
        let rep = verify_epsilon_family(g, &sigma, &r.theta, &r.theta, &z.coords).unwrap();
        assert_eq!(rep.members.len(), 1 << rep.lattice_rank);
        assert!(rep.pass, "{rep:?}");
    }
}
