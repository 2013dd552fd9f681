use proptest::prelude::*;
use zk_core::qlinalg::{intersect, kernel, quotient_map, rank, rref, solve_space, MatrixQ, Rational, SubspaceQ};

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = MatrixQ> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(-3i64..=3, r * c).prop_map(move |v| MatrixQ::from_i64(r, c, &v))
    })
}

/// Two matrices with the same number of columns.
fn pair(rows_a: usize, rows_b: usize, max_cols: usize) -> impl Strategy<Value = (MatrixQ, MatrixQ)> {
    (1..=rows_a, 1..=rows_b, 1..=max_cols).prop_flat_map(|(ra, rb, c)| {
        (prop::collection::vec(-3i64..=3, ra * c), prop::collection::vec(-3i64..=3, rb * c))
            .prop_map(move |(a, b)| (MatrixQ::from_i64(ra, c, &a), MatrixQ::from_i64(rb, c, &b)))
    })
}

fn vector(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(-4i64..=4, n).prop_map(|v| v.into_iter().map(Rational::from_integer).collect())
}

proptest! {
    #[test]
    fn rref_is_idempotent(m in matrix(5, 6)) {
        let (r, p) = rref(&m);
        let (r2, p2) = rref(&r);
        prop_assert_eq!(&r, &r2);
        prop_assert_eq!(p, p2);
    }

    #[test]
    fn rank_nullity(m in matrix(5, 6)) {
        let k = kernel(&m);
        prop_assert_eq!(rank(&m) + k.dim(), m.cols());
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
        for v in k.basis_vectors() {
            prop_assert!(m.mul_vec(&v).iter().all(Rational::is_zero));
        }
    }

    #[test]
    fn solve_recovers_consistent_systems(m in matrix(4, 5), x in vector(5)) {
        let x = x[..m.cols()].to_vec();
        let b = m.mul_vec(&x);
        let (sol, ker) = solve_space(&m, &b).unwrap().expect("b is in the image");
        prop_assert_eq!(m.mul_vec(&sol), b);
        prop_assert_eq!(ker.dim(), m.cols() - rank(&m));
    }

    #[test]
    fn intersection_is_contained_and_sized((a, b) in pair(3, 3, 5)) {
        let n = a.cols();
        let (sa, sb) = (SubspaceQ::row_space(&a), SubspaceQ::row_space(&b));
        let meet = intersect(&[sa.clone(), sb.clone()], n).unwrap();
        let join = SubspaceQ::sum(&[&sa, &sb], n).unwrap();
        prop_assert!(sa.contains_subspace(&meet) && sb.contains_subspace(&meet));
        prop_assert_eq!(meet.dim() + join.dim(), sa.dim() + sb.dim());
    }

    #[test]
    fn quotients_split((a, b) in pair(4, 2, 5)) {
        let n = a.cols();
        let total = SubspaceQ::row_space(&a.vstack(&b));
        let sub = SubspaceQ::row_space(&b);
        let q = quotient_map(&total, &sub).unwrap();
        prop_assert_eq!(q.dim(), total.dim() - sub.dim());
        prop_assert!(q.projection.mul(&q.section.transpose()).is_identity());
        for v in sub.basis_vectors() {
            prop_assert!(q.projection.mul_vec(&v).iter().all(Rational::is_zero));
        }
        prop_assert_eq!(q.projection.cols(), n);
    }
}
