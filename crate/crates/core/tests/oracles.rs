use std::collections::BTreeSet;

use nilbruhat::atlas::{Context, TwoColumnTableau};
use nilbruhat::perm::Permutation;

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Hook-length count for the shape with columns of lengths `n-k` and `k`.
fn hook_length(n: usize, k: usize) -> usize {
    let rows: Vec<usize> = (0..n - k).map(|r| if r < k { 2 } else { 1 }).collect();
    let col_len = |c: usize| rows.iter().filter(|&&len| len > c).count();
    let mut hooks = 1;
    for (r, &len) in rows.iter().enumerate() {
        for c in 0..len {
            hooks *= len - c + col_len(c) - r - 1;
        }
    }
    factorial(n) / hooks
}

fn involutions_with_two_cycles(n: usize, k: usize) -> usize {
    Permutation::all(n)
        .filter(|q| q.compose(q).unwrap().is_identity())
        .filter(|q| (1..=n).filter(|&i| q.at(i) > i).count() == k)
        .count()
}

fn contexts(max_n: usize) -> impl Iterator<Item = Context> {
    (1..=max_n).flat_map(|n| (0..=n / 2).map(move |k| Context::new(n, k).unwrap()))
}

#[test]
fn standard_tableaux_match_hook_length() {
    for ctx in contexts(8) {
        assert_eq!(ctx.standard_tableaux().len(), hook_length(ctx.n(), ctx.k()), "{ctx:?}");
    }
}

fn right_column(t: &TwoColumnTableau) -> Vec<usize> {
    let mut right = t.right_column.clone();
    right.sort_unstable();
    right
}

#[test]
fn orbital_varieties_biject_onto_standard_tableaux() {
    for ctx in contexts(6) {
        let labels = ctx.enumerate_labels(8).unwrap();
        let tableaux: BTreeSet<Vec<usize>> = labels
            .iter()
            .filter(|l| ctx.is_orbital_variety(l))
            .map(|l| right_column(&ctx.tableau(l)))
            .collect();
        let expected: BTreeSet<Vec<usize>> = ctx.standard_tableaux().iter().map(right_column).collect();
        assert_eq!(tableaux, expected, "({}, {})", ctx.n(), ctx.k());
    }
}

#[test]
fn cosets_partition_the_symmetric_group() {
    for ctx in contexts(6) {
        let (n, k) = (ctx.n(), ctx.k());
        let wck: BTreeSet<Permutation> = ctx.wck_elements().into_iter().collect();
        assert_eq!(wck.len(), factorial(k) * factorial(n - 2 * k));
        let mut seen: BTreeSet<Permutation> = BTreeSet::new();
        let mut count = 0;
        for w in Permutation::all(n) {
            if seen.contains(&w) {
                continue;
            }
            // brute force: v ~ w iff w^{-1} v lies in W(C_k)
            let class: BTreeSet<Permutation> = Permutation::all(n)
                .filter(|v| wck.contains(&w.inverse().compose(v).unwrap()))
                .collect();
            assert_eq!(class, ctx.coset_of(&w).unwrap().members);
            seen.extend(class);
            count += 1;
        }
        assert_eq!(count as u128, ctx.label_count(), "({n}, {k})");
        assert_eq!(count, factorial(n) / (factorial(k) * factorial(n - 2 * k)));
    }
}

#[test]
fn six_two_has_180_cosets() {
    let ctx = Context::new(6, 2).unwrap();
    assert_eq!(ctx.enumerate_labels(8).unwrap().len(), 180);
}

#[test]
fn upper_labels_count_involutions() {
    for ctx in contexts(6) {
        let labels = ctx.enumerate_labels(8).unwrap();
        let upper = labels.iter().filter(|l| ctx.is_upper(l)).count();
        assert_eq!(upper, involutions_with_two_cycles(ctx.n(), ctx.k()));
        for l in labels.iter().filter(|l| ctx.is_upper(l)) {
            let tau = ctx.involution_tau(l).unwrap();
            assert!(tau.compose(&tau).unwrap().is_identity());
        }
    }
}

#[test]
fn upper_iff_strictly_upper_rep_iff_row_standard() {
    for ctx in contexts(6) {
        for l in ctx.enumerate_labels(8).unwrap() {
            let upper = ctx.is_upper(&l);
            assert_eq!(upper, ctx.rep_matrix(&l).is_strictly_upper_triangular(), "{l}");
            assert_eq!(upper, ctx.tableau(&l).is_row_standard(), "{l}");
        }
    }
}

#[test]
fn dimension_extremes() {
    for ctx in contexts(6) {
        let labels = ctx.enumerate_labels(8).unwrap();
        let dims: Vec<usize> = labels.iter().map(|l| ctx.dimension(l)).collect();
        assert_eq!(*dims.iter().min().unwrap(), ctx.dim_closed_orbit());
        assert_eq!(*dims.iter().max().unwrap(), ctx.dim_orbit());
    }
}
