//! Fingerprints of named real reductive algebras, evaluated from dataset
//! expressions such as `so(i,j)+so(p-i,q-j)`.

use crate::error::{Error, Result};
use crate::lie::{Fingerprint, Inertia};

use super::expr::{parse_algebra, Arg, Component, Params};

fn zero() -> Fingerprint {
    Fingerprint { dim: 0, center_dim: 0, real_rank: 0, killing: Inertia { pos: 0, neg: 0, zero: 0 } }
}

/// Semisimple algebra with a Cartan decomposition `k + p`.
fn semisimple(dim: i64, k_dim: i64, rank: i64) -> Fingerprint {
    Fingerprint {
        dim: dim as usize,
        center_dim: 0,
        real_rank: rank as usize,
        killing: Inertia { pos: (dim - k_dim) as usize, neg: k_dim as usize, zero: 0 },
    }
}

/// One-dimensional abelian algebra, compact (`u(1)`) or split (`R`).
fn line(split: bool) -> Fingerprint {
    Fingerprint { dim: 1, center_dim: 1, real_rank: usize::from(split), killing: Inertia { pos: 0, neg: 0, zero: 1 } }
}

fn add(a: Fingerprint, b: Fingerprint) -> Fingerprint {
    Fingerprint {
        dim: a.dim + b.dim,
        center_dim: a.center_dim + b.center_dim,
        real_rank: a.real_rank + b.real_rank,
        killing: Inertia {
            pos: a.killing.pos + b.killing.pos,
            neg: a.killing.neg + b.killing.neg,
            zero: a.killing.zero + b.killing.zero,
        },
    }
}

fn su(a: i64, b: i64) -> Fingerprint {
    let n = a + b;
    if n <= 1 {
        return zero();
    }
    semisimple(n * n - 1, a * a + b * b - 1, a.min(b))
}

fn so(a: i64, b: i64) -> Fingerprint {
    let n = a + b;
    match n {
        ..=1 => zero(),
        2 => line(a == 1),
        _ => semisimple(n * (n - 1) / 2, (a * (a - 1) + b * (b - 1)) / 2, a.min(b)),
    }
}

fn so_complex(n: i64) -> Fingerprint {
    match n {
        ..=1 => zero(),
        2 => add(line(false), line(true)),
        _ => semisimple(n * (n - 1), n * (n - 1) / 2, n / 2),
    }
}

fn sp(a: i64, b: i64) -> Fingerprint {
    let n = a + b;
    semisimple(n * (2 * n + 1), a * (2 * a + 1) + b * (2 * b + 1), a.min(b))
}

fn sl_real(n: i64) -> Fingerprint {
    if n <= 1 {
        return zero();
    }
    semisimple(n * n - 1, n * (n - 1) / 2, n - 1)
}

fn bad(c: &Component) -> Error {
    Error::Dataset(format!("cannot evaluate algebra component `{}` with arguments {:?}", c.name, c.args))
}

fn component(c: &Component) -> Result<Fingerprint> {
    use Arg::*;
    let name = c.name.as_str();
    if name == "s" {
        let inner = sum(&c.inner)?;
        if inner.center_dim == 0 {
            return Err(bad(c));
        }
        return Ok(Fingerprint {
            dim: inner.dim - 1,
            center_dim: inner.center_dim - 1,
            real_rank: inner.real_rank,
            killing: Inertia { zero: inner.killing.zero - 1, ..inner.killing },
        });
    }
    if name == "R" && c.args.is_empty() {
        return Ok(line(true));
    }
    if matches!(name, "e6" | "e7" | "e8" | "f4" | "g2") {
        return Err(Error::UnsupportedFamily(format!("{name}{:?}", c.args)));
    }
    if c.args.iter().any(|a| matches!(a, Int(v) if *v < 0)) {
        return Err(Error::ParameterOutOfRange(format!("negative argument in `{name}`")));
    }
    let fp = match (name, c.args.as_slice()) {
        ("su", [Int(a), Int(b)]) => su(*a, *b),
        ("su", [Int(m)]) => su(*m, 0),
        ("u", [Int(a), Int(b)]) if a + b >= 1 => add(su(*a, *b), line(false)),
        ("u", [Int(m)]) if *m >= 1 => add(su(*m, 0), line(false)),
        ("u", _) => zero(),
        ("so", [Int(n), Complex]) => so_complex(*n),
        ("so", [Int(a), Int(b)]) => so(*a, *b),
        ("so", [Int(m)]) => so(*m, 0),
        ("so*", [Int(m)]) if m % 2 == 0 => match m / 2 {
            0 => zero(),
            1 => line(false),
            n => semisimple(n * (2 * n - 1), n * n, n / 2),
        },
        ("sp", [Int(n), Real]) => semisimple(n * (2 * n + 1), n * n, *n),
        ("sp", [Int(n), Complex]) => semisimple(2 * n * (2 * n + 1), n * (2 * n + 1), *n),
        ("sp", [Int(a), Int(b)]) => sp(*a, *b),
        ("sp", [Int(n)]) => sp(*n, 0),
        ("sl", [Int(n), Real]) => sl_real(*n),
        ("sl", [Int(n), Complex]) if *n >= 2 => semisimple(2 * (n * n - 1), n * n - 1, n - 1),
        ("sl", [Int(_), Complex]) => zero(),
        ("gl", [Int(n), Real]) if *n >= 1 => add(sl_real(*n), line(true)),
        ("su*", [Int(m)]) if m % 2 == 0 && *m >= 2 => {
            let n = m / 2;
            semisimple(4 * n * n - 1, n * (2 * n + 1), n - 1)
        }
        _ => return Err(bad(c)),
    };
    Ok(fp)
}

fn sum(cs: &[Component]) -> Result<Fingerprint> {
    cs.iter().try_fold(zero(), |acc, c| Ok(add(acc, component(c)?)))
}

/// Fingerprint of the algebra named by `src` at the given parameters.
pub fn expected_fingerprint(src: &str, params: &Params) -> Result<Fingerprint> {
    sum(&parse_algebra(src, params)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(src: &str, kv: &[(&str, i64)]) -> Fingerprint {
        let p: Params = kv.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        expected_fingerprint(src, &p).unwrap()
    }

    #[test]
    fn classical_values() {
        let f = fp("su(2,1)", &[]);
        assert_eq!((f.dim, f.real_rank, f.killing.neg), (8, 1, 4));
        let f = fp("gl(n,R)", &[("n", 2)]);
        assert_eq!((f.dim, f.center_dim, f.real_rank), (4, 1, 2));
        let f = fp("gl(p,R)+gl(n-p,R)", &[("n", 2), ("p", 1)]);
        assert_eq!((f.dim, f.center_dim, f.real_rank, f.killing.zero), (2, 2, 2, 2));
        let f = fp("s(u(i,j)+u(p-i,q-j))", &[("p", 2), ("q", 1), ("i", 1), ("j", 0)]);
        assert_eq!((f.dim, f.center_dim, f.real_rank), (4, 1, 1));
        let f = fp("s(u(i,j)+u(p-i,q-j))", &[("p", 2), ("q", 1), ("i", 0), ("j", 0)]);
        assert_eq!(f, fp("su(2,1)", &[]));
        let f = fp("sp(1)+sp(1)+u(1)", &[]);
        assert_eq!((f.dim, f.center_dim), (7, 1));
        assert_eq!(fp("so(2)", &[]).real_rank, 0);
        assert_eq!(fp("so(1,1)", &[]).real_rank, 1);
        assert_eq!(fp("so*(4)", &[]).dim, 6);
    }

    #[test]
    fn exceptional_is_unsupported() {
        let p = Params::new();
        assert!(matches!(expected_fingerprint("e6(-14)", &p), Err(Error::UnsupportedFamily(_))));
    }
}
