use proptest::prelude::*;
use proptest::sample::subsequence;
use visibility_core::analysis::row_involutions;
use visibility_core::exact::{
    flatten, rational_eigenspaces, unflatten, ExactMatrix, GaussianRational, QMatrix, Rational, RealSpan,
};
use visibility_core::lie::{maximal_abelian_ordered, multi_fixed};
use visibility_core::realizations::{build, Dataset, Family};

fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=7).prop_map(|(n, d)| Rational::new(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |q| !q.is_zero())
}

fn vector(len: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(), len)
}

/// Up to six vectors in Q^6, with frequent linear dependencies.
fn vectors() -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(vector(6), 0..6).prop_flat_map(|vs| {
        let n = vs.len();
        prop::collection::vec((0..n.max(1), 0..n.max(1), rational()), 0..3).prop_map(move |mix| {
            let mut vs = vs.clone();
            for (i, j, c) in &mix {
                if *i < vs.len() && *j < vs.len() {
                    let w: Vec<Rational> = vs[*i].iter().zip(&vs[*j]).map(|(a, b)| a + &(c * b)).collect();
                    vs.push(w);
                }
            }
            vs
        })
    })
}

fn gaussian_matrix(rows: usize, cols: usize) -> impl Strategy<Value = ExactMatrix> {
    prop::collection::vec((rational(), rational()), rows * cols).prop_map(move |es| {
        ExactMatrix::from_entries(rows, cols, es.into_iter().map(|(re, im)| GaussianRational::new(re, im)).collect())
    })
}

proptest! {
    #[test]
    fn span_ignores_order_and_scaling(
        vs in vectors(),
        seed in any::<u64>(),
        scales in prop::collection::vec(nonzero_rational(), 12),
    ) {
        let base = RealSpan::span_of(6, &vs);
        let mut shuffled = vs.clone();
        let n = shuffled.len();
        for i in (1..n).rev() {
            shuffled.swap(i, (seed.rotate_left(i as u32) as usize) % (i + 1));
        }
        let scaled: Vec<Vec<Rational>> =
            shuffled.iter().zip(&scales).map(|(v, s)| v.iter().map(|x| x * s).collect()).collect();
        prop_assert_eq!(&base, &RealSpan::span_of(6, &shuffled));
        prop_assert_eq!(&base, &RealSpan::span_of(6, &scaled));
    }

    #[test]
    fn grassmann_identity(a in vectors(), b in vectors()) {
        let a = RealSpan::span_of(6, &a);
        let b = RealSpan::span_of(6, &b);
        let meet = a.intersect(&b);
        let join = a.sum(&b);
        prop_assert!(meet.dim() <= a.dim().min(b.dim()));
        prop_assert_eq!(a.dim() + b.dim(), meet.dim() + join.dim());
        prop_assert!(meet.is_subspace_of(&a) && meet.is_subspace_of(&b));
        prop_assert!(a.is_subspace_of(&join) && b.is_subspace_of(&join));
    }

    #[test]
    fn diagonal_spectrum_is_the_diagonal(d in prop::collection::vec(rational(), 1..7)) {
        let spaces = rational_eigenspaces(&QMatrix::diag(&d)).unwrap();
        let mut found: Vec<Rational> = Vec::new();
        for (value, space) in &spaces {
            found.extend(std::iter::repeat_n(value.clone(), space.dim()));
        }
        let mut expected = d.clone();
        expected.sort();
        found.sort();
        prop_assert_eq!(found, expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn flatten_round_trip(m in (1usize..4, 1usize..4).prop_flat_map(|(r, c)| gaussian_matrix(r, c))) {
        let v = flatten(&m);
        prop_assert_eq!(v.len(), 2 * m.rows() * m.cols());
        prop_assert_eq!(unflatten(&v, m.rows(), m.cols()), m);
    }
}

/// `(algebra, g^{−θ,−τ})` for a few table 1 instances.
fn split_rank_spaces() -> Vec<(visibility_core::realizations::Realization, RealSpan, usize)> {
    let ds = Dataset::embedded().unwrap();
    let mut out = Vec::new();
    for label in ["1", "3", "8"] {
        let row = ds.row(1, label).unwrap();
        for params in row.instances(4).unwrap() {
            let family: Family = row.family(&params).unwrap();
            let r = build(&family, 4).unwrap();
            let (tau, _) = row_involutions(row, &params, &r).unwrap();
            let v = multi_fixed(&r.algebra, &[(&r.theta, -1), (&tau, -1)]).unwrap();
            let rank = maximal_abelian_ordered(&r.algebra, v.basis()).dim();
            out.push((r, v, rank));
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn greedy_rank_is_order_independent(
        seed in any::<u64>(),
        coeffs in prop::collection::vec(rational(), 64),
        keep in subsequence((0..64usize).collect::<Vec<_>>(), 0..8),
    ) {
        for (r, v, rank) in split_rank_spaces() {
            let mut list: Vec<Vec<Rational>> = v.basis().to_vec();
            let n = list.len();
            for i in (1..n).rev() {
                list.swap(i, (seed.rotate_left(i as u32) as usize) % (i + 1));
            }
            // Mix in rational combinations so the list is not a coordinate basis.
            for (k, &i) in keep.iter().enumerate() {
                if n > 1 {
                    let (a, b) = (i % n, (i / n + 1 + i % n) % n);
                    let c = &coeffs[k];
                    let w: Vec<Rational> = list[a].iter().zip(&list[b]).map(|(x, y)| x + &(c * y)).collect();
                    list.insert(0, w);
                }
            }
            let m = maximal_abelian_ordered(&r.algebra, &list);
            prop_assert_eq!(m.dim(), rank, "{}", r.family);
            prop_assert!(m.is_subspace_of(&v));
        }
    }
}
