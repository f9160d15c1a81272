//! Labels `(σ, α) ∈ Z_k × W_k` of the Borel orbits in the class of rank-`k`
//! square-zero `n×n` matrices, and the `W(C_k)`-cosets they index.
//!
//! Positions `1..n` split into three blocks: `1..=k`, `k+1..=n-k` and
//! `n-k+1..=n`. Right multiplication by `W(C_k)` permutes the middle block
//! freely and the two outer blocks by one common permutation.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::perm::{Permutation, ReducedWord};

/// Default bound on `n` for anything that enumerates all labels.
pub const DEFAULT_ENUMERATION_CAP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Context {
    n: usize,
    k: usize,
}

impl Context {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n == 0 || 2 * k > n {
            return Err(Error::InvalidContext { n, k });
        }
        Ok(Context { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Block index (1, 2 or 3) of a position.
    pub fn block(&self, i: usize) -> u8 {
        if i <= self.k {
            1
        } else if i <= self.n - self.k {
            2
        } else {
            3
        }
    }

    /// `dim Y⁰ = k(k+1)/2`.
    pub fn dim_closed_orbit(&self) -> usize {
        self.k * (self.k + 1) / 2
    }

    /// `dim O_k = 2k(n−k)`.
    pub fn dim_orbit(&self) -> usize {
        2 * self.k * (self.n - self.k)
    }

    /// Number of labels, `n! / (k! (n−2k)!)`.
    pub fn label_count(&self) -> u128 {
        let f = |m: usize| (1..=m as u128).product::<u128>();
        f(self.n) / (f(self.k) * f(self.n - 2 * self.k))
    }

    pub fn check_cap(&self, cap: usize) -> Result<()> {
        if self.n > cap {
            return Err(Error::EnumerationCapExceeded { n: self.n, cap });
        }
        Ok(())
    }

    fn check_size(&self, p: &Permutation) -> Result<()> {
        if p.n() != self.n {
            return Err(Error::SizeMismatch {
                left: p.n(),
                right: self.n,
            });
        }
        Ok(())
    }

    /// `σ ∈ Z_k`: increasing on each of the three blocks.
    pub fn in_zk(&self, p: &Permutation) -> bool {
        p.n() == self.n
            && (1..self.n).all(|i| self.block(i) != self.block(i + 1) || p.at(i) < p.at(i + 1))
    }

    /// `α ∈ W_k`: fixes `k+1..=n`.
    pub fn in_wk(&self, p: &Permutation) -> bool {
        p.n() == self.n && (self.k + 1..=self.n).all(|i| p.at(i) == i)
    }

    /// The longest element `ω_k` of `W_k`.
    pub fn omega(&self) -> Permutation {
        let images = (1..=self.k).rev().chain(self.k + 1..=self.n).collect();
        Permutation::from_images(images).expect("valid")
    }

    /// The longest element `o_k` of the Levi Weyl group: each block reversed.
    pub fn o_k(&self) -> Permutation {
        let (n, k) = (self.n, self.k);
        let images = (1..=k)
            .rev()
            .chain((k + 1..=n - k).rev())
            .chain((n - k + 1..=n).rev())
            .collect();
        Permutation::from_images(images).expect("valid")
    }

    /// All elements of `W(C_k)`, sorted.
    pub fn wck_elements(&self) -> Vec<Permutation> {
        let (n, k) = (self.n, self.k);
        let m = n - 2 * k;
        let mut out = Vec::new();
        for outer in (1..=k).permutations(k) {
            for middle in (1..=m).permutations(m) {
                let mut images = vec![0; n];
                for i in 0..k {
                    images[i] = outer[i];
                    images[n - k + i] = n - k + outer[i];
                }
                for j in 0..m {
                    images[k + j] = k + middle[j];
                }
                out.push(Permutation::from_images(images).expect("valid"));
            }
        }
        out.sort();
        out
    }

    /// The generating set `{s_j s_{n−k+j} : j < k} ∪ {s_j : k < j < n−k}`.
    pub fn wck_generators(&self) -> Vec<Permutation> {
        let (n, k) = (self.n, self.k);
        let mut gens = Vec::new();
        for j in 1..k {
            let g = Permutation::identity(n)
                .mul_simple_right(j)
                .mul_simple_right(n - k + j);
            gens.push(g);
        }
        for j in k + 1..n.saturating_sub(k) {
            gens.push(Permutation::identity(n).mul_simple_right(j));
        }
        gens
    }

    pub fn label(&self, sigma: Permutation, alpha: Permutation) -> Result<OrbitLabel> {
        self.check_size(&sigma)?;
        self.check_size(&alpha)?;
        if !self.in_zk(&sigma) {
            return Err(Error::InvalidLabel(format!("sigma {sigma} is not in Z_{}", self.k)));
        }
        if !self.in_wk(&alpha) {
            return Err(Error::InvalidLabel(format!("alpha {alpha} is not in W_{}", self.k)));
        }
        Ok(OrbitLabel { sigma, alpha })
    }

    pub fn identity_label(&self) -> OrbitLabel {
        let id = Permutation::identity(self.n);
        OrbitLabel {
            sigma: id.clone(),
            alpha: id,
        }
    }

    /// All of `Z_k`, sorted.
    pub fn zk_elements(&self) -> Vec<Permutation> {
        let (n, k) = (self.n, self.k);
        let mut out = Vec::new();
        for first in (1..=n).combinations(k) {
            let rest: Vec<usize> = (1..=n).filter(|v| !first.contains(v)).collect();
            for middle in rest.iter().copied().combinations(n - 2 * k) {
                let last = rest.iter().copied().filter(|v| !middle.contains(v));
                let images = first.iter().copied().chain(middle.iter().copied()).chain(last).collect();
                out.push(Permutation::from_images(images).expect("valid"));
            }
        }
        out.sort();
        out
    }

    /// Every label, ordered by dimension and then by `σα` in one-line order.
    pub fn enumerate_labels(&self, cap: usize) -> Result<Vec<OrbitLabel>> {
        self.check_cap(cap)?;
        let alphas: Vec<Permutation> = Permutation::all(self.k).map(|a| a.extend(self.n)).collect();
        let mut labels: Vec<OrbitLabel> = self
            .zk_elements()
            .into_iter()
            .cartesian_product(alphas)
            .map(|(sigma, alpha)| OrbitLabel { sigma, alpha })
            .collect();
        labels.sort_by_cached_key(|l| (l.word_length(), l.product()));
        Ok(labels)
    }

    /// The left coset `w·W(C_k)`.
    pub fn coset_of(&self, w: &Permutation) -> Result<OrbitCoset> {
        self.check_size(w)?;
        let members: BTreeSet<Permutation> = self
            .wck_elements()
            .iter()
            .map(|c| w.compose(c).expect("same size"))
            .collect();
        let canonical = members
            .iter()
            .min_by_key(|m| (m.length(), (*m).clone()))
            .expect("nonempty")
            .clone();
        Ok(OrbitCoset { members, canonical })
    }

    /// The label `(σ, α)` with `σα ∈ w·W(C_k)`.
    pub fn label_of(&self, w: &Permutation) -> Result<OrbitLabel> {
        self.check_size(w)?;
        let (n, k) = (self.n, self.k);
        let mut tau = vec![0; n];
        // middle block sorted by value
        let mut middle: Vec<usize> = (k + 1..=n - k).map(|i| w.at(i)).collect();
        middle.sort_unstable();
        tau[k..n - k].copy_from_slice(&middle);
        // sort the last block, dragging the first block along
        let mut pairs: Vec<(usize, usize)> = (1..=k).map(|i| (w.at(n - k + i), w.at(i))).collect();
        pairs.sort_unstable();
        for (i, (last, first)) in pairs.into_iter().enumerate() {
            tau[i] = first;
            tau[n - k + i] = last;
        }
        let mut firsts: Vec<usize> = tau[..k].to_vec();
        firsts.sort_unstable();
        let mut sigma = tau.clone();
        sigma[..k].copy_from_slice(&firsts);
        let alpha: Vec<usize> = (0..k)
            .map(|i| firsts.iter().position(|&v| v == tau[i]).expect("present") + 1)
            .chain(k + 1..=n)
            .collect();
        let sigma = Permutation::from_images(sigma)?;
        let alpha = Permutation::from_images(alpha)?;
        debug_assert_eq!(
            sigma.compose(&alpha)?,
            Permutation::from_images(tau.clone())?
        );
        self.label(sigma, alpha)
    }

    pub fn label_of_coset(&self, c: &OrbitCoset) -> Result<OrbitLabel> {
        self.label_of(&c.canonical)
    }

    /// `l(σ) + l(α) + k(k+1)/2`.
    pub fn dimension(&self, lbl: &OrbitLabel) -> usize {
        lbl.word_length() + self.dim_closed_orbit()
    }

    /// The 0/1 matrix `Σ_j E_{σα(j), σ(n−k+j)}`.
    pub fn rep_matrix(&self, lbl: &OrbitLabel) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.n, self.n);
        for (r, s) in self.rep_support(lbl) {
            m.set(r, s, crate::linalg::int(1));
        }
        m
    }

    /// Nonzero positions of [`Context::rep_matrix`].
    pub fn rep_support(&self, lbl: &OrbitLabel) -> Vec<(usize, usize)> {
        let tau = lbl.product();
        (1..=self.k)
            .map(|j| (tau.at(j), lbl.sigma.at(self.n - self.k + j)))
            .collect()
    }

    /// True when the representative matrix is strictly upper-triangular.
    pub fn is_upper(&self, lbl: &OrbitLabel) -> bool {
        self.rep_support(lbl).into_iter().all(|(r, s)| r < s)
    }

    pub fn link_pattern(&self, lbl: &OrbitLabel) -> OrientedLinkPattern {
        OrientedLinkPattern {
            arcs: self.rep_support(lbl).into_iter().map(|(r, s)| (s, r)).collect(),
        }
    }

    pub fn tableau(&self, lbl: &OrbitLabel) -> TwoColumnTableau {
        let tau = lbl.product();
        let (n, k) = (self.n, self.k);
        TwoColumnTableau {
            left_column: (1..=n - k).map(|i| tau.at(i)).collect(),
            right_column: (n - k + 1..=n).map(|i| tau.at(i)).collect(),
        }
    }

    /// `τ_{σα} = Π_i (σα(i) σ(n−k+i))`; only defined for upper labels.
    pub fn involution_tau(&self, lbl: &OrbitLabel) -> Result<Permutation> {
        if !self.is_upper(lbl) {
            return Err(Error::NotUpperTriangular(lbl.to_string()));
        }
        let mut images: Vec<usize> = (1..=self.n).collect();
        for (a, b) in self.rep_support(lbl) {
            images[a - 1] = b;
            images[b - 1] = a;
        }
        Permutation::from_images(images)
    }

    /// Upper label of top dimension `k(n−k)` in the strictly upper part.
    pub fn is_orbital_variety(&self, lbl: &OrbitLabel) -> bool {
        self.is_upper(lbl) && 2 * self.dimension(lbl) == self.dim_orbit()
    }

    /// Dimension of the components of the Springer fiber over `x_k`.
    pub fn springer_component_dim(&self) -> usize {
        let (n, k) = (self.n, self.k);
        (k * k.saturating_sub(1) + (n - k) * (n - k).saturating_sub(1)) / 2
    }

    /// Standard tableaux of the two-column shape (column lengths `n−k`, `k`).
    pub fn standard_tableaux(&self) -> Vec<TwoColumnTableau> {
        let (n, k) = (self.n, self.k);
        let mut out = Vec::new();
        for right in (1..=n).combinations(k) {
            let left: Vec<usize> = (1..=n).filter(|v| !right.contains(v)).collect();
            let t = TwoColumnTableau {
                left_column: left,
                right_column: right,
            };
            if t.is_standard() {
                out.push(t);
            }
        }
        out
    }

    /// Parses `sigma=… alpha=…` where each side is one-line notation or a
    /// word in the simple reflections; `alpha` may be given on `1..k` only
    /// and defaults to the identity.
    pub fn parse_label(&self, s: &str) -> Result<OrbitLabel> {
        let mut sigma = None;
        let mut alpha = None;
        for part in s.split(|c: char| c.is_whitespace() || c == ';' || c == '/').filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {part:?}")))?;
            let p = self.parse_element(value)?;
            match key.trim() {
                "sigma" | "s" => sigma = Some(p),
                "alpha" | "a" => alpha = Some(p),
                other => return Err(Error::Parse(format!("unknown label key {other:?}"))),
            }
        }
        let sigma = sigma.ok_or_else(|| Error::Parse(format!("missing sigma in {s:?}")))?;
        let alpha = alpha.unwrap_or_else(|| Permutation::identity(self.n));
        self.label(sigma, alpha)
    }

    fn parse_element(&self, value: &str) -> Result<Permutation> {
        let v = value.trim();
        if v.is_empty() || v == "id" || v == "e" {
            return Ok(Permutation::identity(self.n));
        }
        if v.starts_with('s') {
            return v.parse::<ReducedWord>()?.evaluate(self.n);
        }
        let p: Permutation = v.parse()?;
        if p.n() < self.n {
            Ok(p.extend(self.n))
        } else {
            Ok(p)
        }
    }

    pub fn label_record(&self, lbl: &OrbitLabel) -> LabelRecord {
        LabelRecord {
            n: self.n,
            k: self.k,
            sigma: lbl.sigma.to_string(),
            alpha: lbl.alpha.to_string(),
        }
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n,k)=({},{})", self.n, self.k)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitLabel {
    pub sigma: Permutation,
    pub alpha: Permutation,
}

impl OrbitLabel {
    /// `σα`, the label's minimal coset representative.
    pub fn product(&self) -> Permutation {
        self.sigma.compose(&self.alpha).expect("same size")
    }

    /// `l(σ) + l(α)`.
    pub fn word_length(&self) -> usize {
        self.sigma.length() + self.alpha.length()
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sigma={} alpha={}", self.sigma, self.alpha)
    }
}

/// JSON shape `{"n":4,"k":2,"sigma":"2,4,1,3","alpha":"1,2,3,4"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelRecord {
    pub n: usize,
    pub k: usize,
    pub sigma: String,
    pub alpha: String,
}

impl LabelRecord {
    pub fn resolve(&self) -> Result<(Context, OrbitLabel)> {
        let ctx = Context::new(self.n, self.k)?;
        let lbl = ctx.label(self.sigma.parse()?, self.alpha.parse()?)?;
        Ok((ctx, lbl))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrbitCoset {
    pub members: BTreeSet<Permutation>,
    /// Minimal under (length, one-line lexicographic).
    pub canonical: Permutation,
}

impl OrbitCoset {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn min_length(&self) -> usize {
        self.canonical.length()
    }

    pub fn contains(&self, w: &Permutation) -> bool {
        self.members.contains(w)
    }
}

/// All members of minimal length, lexicographically sorted.
pub fn min_length_reps(c: &OrbitCoset) -> Vec<Permutation> {
    let l = c.min_length();
    c.members.iter().filter(|m| m.length() == l).cloned().collect()
}

/// Arcs `(σ(n−k+j), σα(j))`; serialized as `[[3,2],[4,4]]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OrientedLinkPattern {
    pub arcs: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoColumnTableau {
    #[serde(rename = "left")]
    pub left_column: Vec<usize>,
    #[serde(rename = "right")]
    pub right_column: Vec<usize>,
}

impl TwoColumnTableau {
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.left_column
            .iter()
            .enumerate()
            .map(|(i, &a)| match self.right_column.get(i) {
                Some(&b) => vec![a, b],
                None => vec![a],
            })
            .collect()
    }

    pub fn is_row_standard(&self) -> bool {
        self.right_column
            .iter()
            .zip(&self.left_column)
            .all(|(b, a)| a < b)
    }

    /// Rows increase and both columns increase downwards.
    pub fn is_standard(&self) -> bool {
        self.is_row_standard()
            && self.left_column.windows(2).all(|w| w[0] < w[1])
            && self.right_column.windows(2).all(|w| w[0] < w[1])
    }
}

impl fmt::Display for TwoColumnTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self
            .rows()
            .into_iter()
            .map(|r| format!("({})", r.iter().join(",")))
            .join(",");
        f.write_str(&rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::contains_pattern;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn w(n: usize, s: &str) -> Permutation {
        s.parse::<ReducedWord>().unwrap().evaluate(n).unwrap()
    }

    #[test]
    fn context_bounds() {
        assert!(Context::new(4, 2).is_ok());
        assert!(Context::new(4, 3).is_err());
        assert!(Context::new(0, 0).is_err());
        assert!(Context::new(5, 0).is_ok());
    }

    #[test]
    fn zk_membership() {
        let c = Context::new(4, 2).unwrap();
        assert!(c.in_zk(&Permutation::identity(4)));
        assert!(c.in_zk(&p("2,4,1,3")));
        assert!(!c.in_zk(&p("2,1,3,4")));
        // exhaustive filter over S_4
        assert_eq!(Permutation::all(4).filter(|q| c.in_zk(q)).count(), 6);
        assert_eq!(c.zk_elements().len(), 6);
    }

    #[test]
    fn label_counts() {
        let c = Context::new(4, 2).unwrap();
        assert_eq!(c.enumerate_labels(8).unwrap().len(), 12);
        let c0 = Context::new(5, 0).unwrap();
        let labels = c0.enumerate_labels(8).unwrap();
        assert_eq!(labels, vec![c0.identity_label()]);
        assert!(matches!(
            Context::new(9, 2).unwrap().enumerate_labels(8),
            Err(Error::EnumerationCapExceeded { n: 9, cap: 8 })
        ));
    }

    #[test]
    fn cosets() {
        let c = Context::new(4, 2).unwrap();
        let s1 = Permutation::simple(4, 1).unwrap();
        let s3 = Permutation::simple(4, 3).unwrap();
        let cs = c.coset_of(&s1).unwrap();
        assert_eq!(cs.members, [s1.clone(), s3.clone()].into_iter().collect());
        assert_eq!(min_length_reps(&cs), vec![s3, s1]);
        let id = c.coset_of(&Permutation::identity(4)).unwrap();
        assert_eq!(id.members.iter().cloned().collect::<Vec<_>>(), c.wck_elements());
        assert_eq!(min_length_reps(&id), vec![Permutation::identity(4)]);
    }

    #[test]
    fn generators_generate_wck() {
        for (n, k) in [(4, 2), (5, 1), (6, 2), (6, 3), (7, 2)] {
            let c = Context::new(n, k).unwrap();
            let mut group: BTreeSet<Permutation> = [Permutation::identity(n)].into_iter().collect();
            loop {
                let next: BTreeSet<Permutation> = group
                    .iter()
                    .flat_map(|g| c.wck_generators().into_iter().map(move |s| g.compose(&s).unwrap()))
                    .collect();
                let before = group.len();
                group.extend(next);
                if group.len() == before {
                    break;
                }
            }
            assert_eq!(group.into_iter().collect::<Vec<_>>(), c.wck_elements());
        }
    }

    #[test]
    fn label_of_inverts_product() {
        for (n, k) in [(4, 1), (4, 2), (5, 2), (6, 2), (6, 3)] {
            let c = Context::new(n, k).unwrap();
            for lbl in c.enumerate_labels(8).unwrap() {
                let coset = c.coset_of(&lbl.product()).unwrap();
                assert_eq!(coset.len(), c.wck_elements().len());
                for m in &coset.members {
                    assert_eq!(c.label_of(m).unwrap(), lbl);
                }
                assert_eq!(coset.min_length(), lbl.word_length());
                assert!(min_length_reps(&coset).contains(&lbl.product()));
            }
        }
    }

    #[test]
    fn dimensions() {
        let c42 = Context::new(4, 2).unwrap();
        assert_eq!(c42.dimension(&c42.identity_label()), 3);
        let l = c42.label(w(4, "s2.s1.s3.s2"), Permutation::identity(4)).unwrap();
        assert_eq!(c42.dimension(&l), 7);
        let c41 = Context::new(4, 1).unwrap();
        let l = c41.label(w(4, "s2.s1.s3"), Permutation::identity(4)).unwrap();
        assert_eq!(c41.dimension(&l), 4);
        assert_eq!(c42.dim_orbit(), 8);
        assert_eq!(Context::new(6, 0).unwrap().dim_orbit(), 0);
        let c62 = Context::new(6, 2).unwrap();
        let (n, k) = (6, 2);
        let dim_ck = 2 * k * k + (n - 2 * k) * (n - 2 * k) + 2 * k * (n - 2 * k);
        assert_eq!(c62.dim_orbit(), n * n - dim_ck);
        assert_eq!(c62.dim_orbit(), 16);
    }

    #[test]
    fn rep_matrices() {
        let c42 = Context::new(4, 2).unwrap();
        assert_eq!(c42.rep_support(&c42.identity_label()), vec![(1, 3), (2, 4)]);
        let l = c42.label(p("3,4,1,2"), Permutation::identity(4)).unwrap();
        assert_eq!(c42.rep_support(&l), vec![(3, 1), (4, 2)]);
        let c62 = Context::new(6, 2).unwrap();
        let l = c62.label(p("2,4,1,6,3,5"), Permutation::identity(6)).unwrap();
        assert_eq!(c62.rep_support(&l), vec![(2, 3), (4, 5)]);
        assert!(c62.is_upper(&l));
    }

    #[test]
    fn tableau_and_involution() {
        let c62 = Context::new(6, 2).unwrap();
        let l = c62.label(p("2,4,1,6,3,5"), Permutation::identity(6)).unwrap();
        let t = c62.tableau(&l);
        assert_eq!(t.rows(), vec![vec![2, 3], vec![4, 5], vec![1], vec![6]]);
        assert!(t.is_row_standard());
        assert_eq!(c62.involution_tau(&l).unwrap(), p("1,3,2,5,4,6"));
        let c42 = Context::new(4, 2).unwrap();
        let id = c42.identity_label();
        assert_eq!(c42.involution_tau(&id).unwrap(), p("3,4,1,2"));
        assert_eq!(c42.link_pattern(&id).arcs, vec![(3, 1), (4, 2)]);
        let bad = c42.label(w(4, "s1.s3.s2"), Permutation::identity(4)).unwrap();
        assert!(matches!(c42.involution_tau(&bad), Err(Error::NotUpperTriangular(_))));
    }

    #[test]
    fn tableau_matrix_consistency_on_4_2() {
        let c = Context::new(4, 2).unwrap();
        for lbl in c.enumerate_labels(8).unwrap() {
            assert_eq!(c.tableau(&lbl).is_row_standard(), c.is_upper(&lbl));
            assert_eq!(
                c.rep_matrix(&lbl).is_strictly_upper_triangular(),
                c.tableau(&lbl).is_row_standard()
            );
        }
    }

    #[test]
    fn orbital_varieties() {
        let c62 = Context::new(6, 2).unwrap();
        assert_eq!(c62.springer_component_dim(), 7);
        let l = c62.label(p("2,4,1,6,3,5"), Permutation::identity(6)).unwrap();
        assert!(c62.is_orbital_variety(&l));
        let labels = c62.enumerate_labels(8).unwrap();
        assert_eq!(labels.iter().filter(|l| c62.is_orbital_variety(l)).count(), 9);
        assert_eq!(c62.standard_tableaux().len(), 9);
    }

    #[test]
    fn longest_elements() {
        let c = Context::new(4, 2).unwrap();
        assert_eq!(c.o_k(), p("2,1,4,3"));
        assert_eq!(c.omega(), p("2,1,3,4"));
        let sigma = w(4, "s1.s3.s2");
        assert_eq!(sigma.compose(&c.o_k()).unwrap(), p("4,2,3,1"));
        // σ o_1 containing 3412 matches σ containing 3142 for k = 1
        let c1 = Context::new(5, 1).unwrap();
        for s in c1.zk_elements() {
            let so = s.compose(&c1.o_k()).unwrap();
            assert_eq!(
                contains_pattern(&so, &p("3,4,1,2")),
                contains_pattern(&s, &p("3,1,4,2"))
            );
            assert!(!contains_pattern(&so, &p("4,2,3,1")));
        }
    }

    #[test]
    fn label_parsing() {
        let c = Context::new(4, 2).unwrap();
        let a = c.parse_label("sigma=2,4,1,3 alpha=id").unwrap();
        let b = c.parse_label("sigma=s1.s3.s2").unwrap();
        assert_eq!(a, b);
        let d = c.parse_label("sigma=s1.s3.s2 alpha=s1").unwrap();
        assert_eq!(d.alpha, p("2,1,3,4"));
        assert_eq!(c.parse_label("sigma=2,4,1,3 alpha=2,1").unwrap(), d);
        assert!(c.parse_label("sigma=2,1,3,4").is_err());
        assert!(c.parse_label("alpha=id").is_err());
        let rec = c.label_record(&d);
        let json = serde_json::to_string(&rec).unwrap();
        assert_eq!(json, r#"{"n":4,"k":2,"sigma":"2,4,1,3","alpha":"2,1,3,4"}"#);
        let back: LabelRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back.resolve().unwrap(), (c, d));
    }
}
