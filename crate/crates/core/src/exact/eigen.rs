use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use super::rational::common_denominator;
use super::{QMatrix, Rational, RealSpan};
use crate::error::ExactError;

/// Candidates examined per denominator before giving up on a root search.
const MAX_CANDIDATES: u64 = 4_000_000;

/// Evaluates a polynomial (coefficients in increasing degree) at `x`.
pub fn poly_eval(coeffs: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in coeffs.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

/// Divides by `(x − r)`, returning the quotient and the remainder.
pub fn synthetic_division(coeffs: &[Rational], r: &Rational) -> (Vec<Rational>, Rational) {
    let n = coeffs.len();
    if n <= 1 {
        return (Vec::new(), coeffs.first().cloned().unwrap_or_else(Rational::zero));
    }
    let mut q = vec![Rational::zero(); n - 1];
    let mut carry = Rational::zero();
    for k in (1..n).rev() {
        carry = &coeffs[k] + &(&carry * r);
        q[k - 1] = carry.clone();
    }
    let rem = &coeffs[0] + &(&carry * r);
    (q, rem)
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>, ExactError> {
    let n = n.abs();
    let small = n.to_u64().filter(|&v| v <= 1_000_000_000_000).ok_or(ExactError::SearchLimit)?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= small {
        if small % d == 0 {
            out.push(BigInt::from(d));
            if d * d != small {
                out.push(BigInt::from(small / d));
            }
        }
        d += 1;
    }
    out.sort();
    Ok(out)
}

/// Rational roots (with multiplicity) of a polynomial whose roots all have
/// modulus at most `bound`, together with the degree of the part left over
/// after every rational root has been divided out.
pub fn rational_roots(coeffs: &[Rational], bound: &Rational) -> Result<(Vec<(Rational, usize)>, usize), ExactError> {
    let mut p: Vec<Rational> = coeffs.to_vec();
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    let mut roots: Vec<(Rational, usize)> = Vec::new();
    let mut zero_mult = 0;
    while p.len() > 1 && p[0].is_zero() {
        p.remove(0);
        zero_mult += 1;
    }
    if zero_mult > 0 {
        roots.push((Rational::zero(), zero_mult));
    }
    if p.len() > 1 {
        // Rescale to integer coefficients; a rational root u/v then has v
        // dividing the leading coefficient.
        let d = common_denominator(p.iter());
        let lead = (&p[p.len() - 1] * &Rational::from_bigint(d.clone())).numer();
        let bound_num = bound.numer();
        let bound_den = bound.denom();
        for v in divisors(&lead)? {
            if p.len() <= 1 {
                break;
            }
            // |u/v| ≤ bound  ⇔  |u| ≤ v·bound
            let umax: BigInt = (&v * &bound_num).div_floor(&bound_den);
            let umax = umax.to_u64().ok_or(ExactError::SearchLimit)?;
            if umax > MAX_CANDIDATES {
                return Err(ExactError::SearchLimit);
            }
            let vq = Rational::from_bigint(v.clone());
            for u in 1..=umax {
                if p.len() <= 1 {
                    break;
                }
                if !BigInt::from(u).gcd(&v).is_one() {
                    continue;
                }
                for sign in [1i64, -1] {
                    let r = &Rational::from_integer(sign * u as i64) / &vq;
                    let mut mult = 0;
                    loop {
                        if p.len() <= 1 {
                            break;
                        }
                        let (quot, rem) = synthetic_division(&p, &r);
                        if !rem.is_zero() {
                            break;
                        }
                        p = quot;
                        mult += 1;
                    }
                    if mult > 0 {
                        roots.push((r, mult));
                    }
                }
            }
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Ok((roots, p.len().saturating_sub(1)))
}

/// Complete eigenspace decomposition of a rational matrix whose spectrum is
/// rational, sorted by eigenvalue.
pub fn rational_eigenspaces(l: &QMatrix) -> Result<Vec<(Rational, RealSpan)>, ExactError> {
    assert_eq!(l.rows(), l.cols(), "eigenspaces of a non-square matrix");
    let n = l.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let cp = l.charpoly();
    let (roots, leftover) = rational_roots(&cp, &l.inf_norm())?;
    if leftover > 0 {
        return Err(ExactError::NonRationalSpectrum { leftover_degree: leftover });
    }
    let mut out = Vec::with_capacity(roots.len());
    let mut total = 0;
    for (r, _) in roots {
        let shifted = l.sub(&QMatrix::identity(n).scale(&r));
        let space = RealSpan::kernel_of(&shifted);
        total += space.dim();
        out.push((r, space));
    }
    if total != n {
        return Err(ExactError::NotDiagonalizable { eigenspace_total: total, dim: n });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn identity_has_single_eigenspace() {
        let e = rational_eigenspaces(&QMatrix::identity(3)).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].0, q(1, 1));
        assert_eq!(e[0].1.dim(), 3);
    }

    #[test]
    fn diagonal_multiset() {
        let m = QMatrix::diag(&[q(2, 1), q(2, 1), q(5, 1)]);
        let e = rational_eigenspaces(&m).unwrap();
        let got: Vec<(Rational, usize)> = e.iter().map(|(r, s)| (r.clone(), s.dim())).collect();
        assert_eq!(got, vec![(q(2, 1), 2), (q(5, 1), 1)]);
    }

    #[test]
    fn fractional_and_irrational_spectra() {
        let m = QMatrix::diag(&[q(1, 2), q(-3, 4)]);
        let e = rational_eigenspaces(&m).unwrap();
        assert_eq!(e[0].0, q(-3, 4));
        assert_eq!(e[1].0, q(1, 2));
        // x² − 2
        let r = QMatrix::from_int_rows(&[vec![0, 2], vec![1, 0]]);
        assert!(matches!(rational_eigenspaces(&r), Err(ExactError::NonRationalSpectrum { leftover_degree: 2 })));
        // rotation by 90°: x² + 1
        let r = QMatrix::from_int_rows(&[vec![0, -1], vec![1, 0]]);
        assert!(matches!(rational_eigenspaces(&r), Err(ExactError::NonRationalSpectrum { .. })));
    }

    #[test]
    fn jordan_block_is_not_diagonalizable() {
        let j = QMatrix::from_int_rows(&[vec![1, 1], vec![0, 1]]);
        assert!(matches!(rational_eigenspaces(&j), Err(ExactError::NotDiagonalizable { .. })));
    }
}
