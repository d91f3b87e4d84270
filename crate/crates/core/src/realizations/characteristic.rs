use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{to_sparse, ExactMatrix, Rational, RealSpan};
use crate::lie::{center, fixed_subspace, LinearAlgebraMap, RealFormAlgebra};

/// A generator `Z` of the center of `k`, normalized so that
/// `ad(Z)² = −id` on `p`.
#[derive(Clone, Debug)]
pub struct CharacteristicElement {
    pub coords: Vec<Rational>,
    pub matrix: ExactMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HolomorphicType {
    /// `τZ = Z`
    Holomorphic,
    /// `τZ = −Z`
    AntiHolomorphic,
}

/// Characteristic element for the symmetric decomposition defined by `theta`.
pub fn characteristic_element(g: &RealFormAlgebra, theta: &LinearAlgebraMap) -> Result<CharacteristicElement> {
    let k = fixed_subspace(g, theta, 1)?;
    let p = fixed_subspace(g, theta, -1)?;
    characteristic_element_of(g, &k, &p)
}

/// Characteristic element from an explicit decomposition `g = k + p`.
pub fn characteristic_element_of(g: &RealFormAlgebra, k: &RealSpan, p: &RealSpan) -> Result<CharacteristicElement> {
    if p.dim() == 0 {
        return Err(Error::NotHermitianType("the −1 eigenspace is zero".into()));
    }
    let c = center(g, k);
    if c.dim() != 1 {
        return Err(Error::NotHermitianType(format!("center of k has dimension {}", c.dim())));
    }
    let cz = to_sparse(&c.basis()[0]);
    let ad2 = |v: &[Rational]| -> Vec<Rational> {
        let w = g.bracket_sparse(&cz, &to_sparse(v));
        g.bracket_sparse(&cz, &to_sparse(&w))
    };
    let v0 = &p.basis()[0];
    let w0 = ad2(v0);
    let piv = v0.iter().position(|x| !x.is_zero()).expect("basis vectors are nonzero");
    let mu = -(&w0[piv] / &v0[piv]);
    for v in p.basis() {
        let w = ad2(v);
        let expected: Vec<Rational> = v.iter().map(|x| -(&mu * x)).collect();
        if w != expected {
            return Err(Error::NotHermitianType("ad(C)² is not scalar on p".into()));
        }
    }
    if mu.signum() <= 0 {
        return Err(Error::NotHermitianType("ad(C)² is not negative on p".into()));
    }
    let root =
        mu.sqrt_exact().ok_or_else(|| Error::NotHermitianType(format!("normalizing factor √{mu} is irrational")))?;
    let coords: Vec<Rational> = c.basis()[0].iter().map(|x| x / &root).collect();
    let matrix = g.to_matrix(&coords);
    Ok(CharacteristicElement { coords, matrix })
}

/// Classifies `τ` by `τZ = ±Z`.
pub fn holomorphic_type(tau: &LinearAlgebraMap, z: &CharacteristicElement) -> Result<HolomorphicType> {
    let tz = tau.apply(&z.coords);
    if tz == z.coords {
        Ok(HolomorphicType::Holomorphic)
    } else if tz.iter().zip(&z.coords).all(|(a, b)| *a == -b) {
        Ok(HolomorphicType::AntiHolomorphic)
    } else {
        Err(Error::NotTypeStable(tau.name.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rational_eigenspaces, GaussianRational};
    use crate::realizations::{build, Family};

    #[test]
    fn su_pq_formula() {
        for (p, q) in [(1usize, 1usize), (2, 1), (2, 2), (3, 1)] {
            let r = build(&Family::Su { p, q }, 8).unwrap();
            let z = characteristic_element(&r.algebra, &r.theta).unwrap();
            let s = (p + q) as i64;
            let d: Vec<GaussianRational> = (0..p + q)
                .map(|k| {
                    let v = if k < p { q as i64 } else { -(p as i64) };
                    GaussianRational::new(Rational::zero(), Rational::new(v, s))
                })
                .collect();
            assert_eq!(z.matrix, ExactMatrix::diag(&d), "su({p},{q})");
        }
    }

    #[test]
    fn so23_kernel_is_k() {
        let r = build(&Family::So2 { n: 3 }, 8).unwrap();
        let z = characteristic_element(&r.algebra, &r.theta).unwrap();
        // ad(Z) on the real algebra has spectrum {0, ±i}: its square has
        // eigenvalues 0 (on k) and −1 (on p).
        let adz = r.algebra.ad_matrix(&z.coords);
        let sq = adz.mul(&adz);
        let spaces = rational_eigenspaces(&sq).unwrap();
        let dims: Vec<(Rational, usize)> = spaces.iter().map(|(l, s)| (l.clone(), s.dim())).collect();
        assert_eq!(dims, vec![(Rational::from_integer(-1), 6), (Rational::zero(), 4)]);
        assert_eq!(spaces[1].1, r.k);
    }

    #[test]
    fn sl2_square_is_minus_one() {
        let r = build(&Family::SpR { n: 1 }, 8).unwrap();
        let z = characteristic_element(&r.algebra, &r.theta).unwrap();
        let adz = r.algebra.ad_matrix(&z.coords);
        for v in r.p.basis() {
            let w = adz.mul_vec(&adz.mul_vec(v));
            assert_eq!(w, v.iter().map(|x| -x).collect::<Vec<_>>());
        }
        assert_eq!(holomorphic_type(&r.theta, &z).unwrap(), HolomorphicType::Holomorphic);
    }
}
