//! Exact rational checks: orbit representatives, flag compatibility, Schubert
//! rank conditions, curve identities and resolution incidence systems.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::atlas::{Context, OrbitLabel};
use crate::error::{Error, Result};
use crate::linalg::{int, Rational, RationalMatrix};
use crate::perm::{Permutation, ReducedWord};
use crate::tangent::{curve, phi_plus, y0_square_block, y0_tangent_basis, Root};

pub use crate::tangent::x_matrix;

pub fn is_two_nilpotent_of_rank(m: &RationalMatrix, k: usize) -> bool {
    m.is_square() && (m * m).is_zero() && m.rank() == k
}

/// Block upper-triangular test for `C_k`.
fn in_ck_blocks(ctx: &Context, g: &RationalMatrix) -> bool {
    let (n, k) = (ctx.n(), ctx.k());
    for r in 1..=n {
        for s in 1..=n {
            if ctx.block(r) > ctx.block(s) && !g.get(r, s).is_zero() {
                return false;
            }
        }
    }
    (1..=k).all(|r| (1..=k).all(|s| g.get(r, s) == g.get(r + n - k, s + n - k)))
}

/// Membership in the stabilizer `C_k` of `x_k`; both the block-shape test
/// and the commutation test run and must agree.
pub fn in_ck(ctx: &Context, g: &RationalMatrix) -> Result<bool> {
    if g.rows() != ctx.n() || g.cols() != ctx.n() {
        return Err(Error::SizeMismatch {
            left: g.rows(),
            right: ctx.n(),
        });
    }
    if !g.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    let x = x_matrix(ctx);
    let blocks = in_ck_blocks(ctx, g);
    let commutes = (g * &x) == (&x * g);
    if blocks != commutes {
        return Err(Error::OracleDisagreement(format!(
            "block test {blocks} vs commutation test {commutes} for {g}"
        )));
    }
    Ok(blocks)
}

/// `dim(A + B)` for column blocks `A`, `B`.
pub fn sum_dim(a: &RationalMatrix, b: &RationalMatrix) -> usize {
    a.hstack(b).expect("same row count").rank()
}

/// Column span of `small` inside column span of `big`.
pub fn subspace_contains(big: &RationalMatrix, small: &RationalMatrix) -> bool {
    if small.cols() == 0 {
        return true;
    }
    sum_dim(big, small) == big.rank()
}

/// A complete flag: `V^i` is spanned by the first `i` columns of `basis`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flag {
    basis: RationalMatrix,
}

impl Flag {
    pub fn new(basis: RationalMatrix) -> Result<Flag> {
        if !basis.is_square() || !basis.is_invertible() {
            return Err(Error::SingularMatrix);
        }
        Ok(Flag { basis })
    }

    pub fn standard(n: usize) -> Flag {
        Flag {
            basis: RationalMatrix::identity(n),
        }
    }

    /// Columns `e_{w(1)}, …, e_{w(n)}`.
    pub fn from_permutation(w: &Permutation) -> Flag {
        Flag {
            basis: RationalMatrix::permutation(w),
        }
    }

    pub fn n(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &RationalMatrix {
        &self.basis
    }

    /// `V^i`.
    pub fn subspace(&self, i: usize) -> RationalMatrix {
        self.basis.leading_columns(i)
    }
}

/// `u` is compatible with `V•`: `u(V^i) = 0` for `i ≤ n−k` and
/// `u(V^i) ⊆ V^{i−(n−k)}` otherwise.
pub fn compatible(ctx: &Context, u: &RationalMatrix, f: &Flag) -> bool {
    let (n, k) = (ctx.n(), ctx.k());
    (1..=n).all(|i| {
        let image = u * &f.subspace(i);
        if i <= n - k {
            image.is_zero()
        } else {
            subspace_contains(&f.subspace(i - (n - k)), &image)
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankCondition {
    pub i: usize,
    pub j: usize,
    pub bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankConditionSet {
    pub conditions: Vec<RankCondition>,
}

impl RankConditionSet {
    /// Conditions that cut something out, i.e. bound below `min(i + j, n)`.
    pub fn nontrivial(&self, n: usize) -> Vec<RankCondition> {
        self.conditions
            .iter()
            .copied()
            .filter(|c| c.bound < (c.i + c.j).min(n))
            .collect()
    }
}

/// `dim(V^i + K^j) ≤ i + j − #{a ≤ i : τ(a) ≤ j}` for all `i, j`.
pub fn schubert_conditions(tau: &Permutation) -> RankConditionSet {
    let n = tau.n();
    let mut conditions = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            let overlap = (1..=i).filter(|&a| tau.at(a) <= j).count();
            conditions.push(RankCondition { i, j, bound: i + j - overlap });
        }
    }
    RankConditionSet { conditions }
}

pub fn flag_in_schubert(f: &Flag, tau: &Permutation) -> bool {
    let std = RationalMatrix::identity(f.n());
    schubert_conditions(tau)
        .conditions
        .iter()
        .all(|c| sum_dim(&f.subspace(c.i), &std.leading_columns(c.j)) <= c.bound)
}

pub fn incidence_member(ctx: &Context, u: &RationalMatrix, f: &Flag, lbl: &OrbitLabel) -> bool {
    compatible(ctx, u, f) && flag_in_schubert(f, &lbl.product())
}

/// The flag of the label's own representative `σα`, which carries the
/// representative matrix.
pub fn witness_flag(lbl: &OrbitLabel) -> Flag {
    Flag::from_permutation(&lbl.product())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveCheck {
    SquareZero,
    Rank,
    Conjugation,
    FirstFactorUpper,
    Factorization,
    TangentCoefficient,
    PointAtZero,
}

impl fmt::Display for CurveCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant");
        f.write_str(s.as_str().unwrap_or("?"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveFailure {
    pub t: String,
    pub check: CurveCheck,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveReport {
    pub root: Root,
    pub samples: Vec<String>,
    pub checks_run: usize,
    pub failures: Vec<CurveFailure>,
}

impl CurveReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `u_{−ε}(t) = I + t·E_{j,i}`.
pub fn root_subgroup(n: usize, e: &Root, t: &Rational) -> RationalMatrix {
    let mut u = RationalMatrix::identity(n);
    u.set(e.j, e.i, t.clone());
    u
}

/// First factor `ṙ_ε + t·E_{jj} − t⁻¹·E_{ii} − E_{ji}` of the Bruhat
/// decomposition of `u_{−ε}(t)`.
pub fn bruhat_first_factor(n: usize, e: &Root, t: &Rational) -> RationalMatrix {
    let r = RationalMatrix::permutation(&e.reflection(n));
    let mut a = r;
    let add = |a: &mut RationalMatrix, row, col, v: Rational| {
        let cur = a.get(row, col).clone();
        a.set(row, col, cur + v);
    };
    add(&mut a, e.j, e.j, t.clone());
    add(&mut a, e.i, e.i, -t.recip());
    add(&mut a, e.j, e.i, int(-1));
    a
}

/// Evaluates every curve identity at each sample; `t = 0` only runs the
/// checks that make sense there.
pub fn verify_curve(ctx: &Context, e: &Root, samples: &[Rational]) -> Result<CurveReport> {
    let n = ctx.n();
    let spec = curve(ctx, e)?;
    let x = x_matrix(ctx);
    let r = RationalMatrix::permutation(&e.reflection(n));
    let mut failures = Vec::new();
    let mut checks_run = 0;
    let mut check = |t: &Rational, kind: CurveCheck, ok: bool| {
        checks_run += 1;
        if !ok {
            failures.push(CurveFailure {
                t: t.to_string(),
                check: kind,
            });
        }
    };
    for t in samples {
        let p = spec.point(t);
        check(t, CurveCheck::SquareZero, (&p * &p).is_zero());
        check(t, CurveCheck::Rank, p.rank() == ctx.k());
        let conj = &(&root_subgroup(n, e, t) * &x) * &root_subgroup(n, e, &-t);
        check(t, CurveCheck::Conjugation, conj == p);
        if t.is_zero() {
            check(t, CurveCheck::PointAtZero, p == x);
            continue;
        }
        let a = bruhat_first_factor(n, e, t);
        check(
            t,
            CurveCheck::FirstFactorUpper,
            a.is_upper_triangular() && a.is_invertible(),
        );
        let mut right = RationalMatrix::identity(n);
        right.set(e.i, e.j, t.recip());
        let product = &(&a * &r) * &right;
        check(t, CurveCheck::Factorization, product == root_subgroup(n, e, t));
        let minus = spec.point(&-t);
        let coefficient = (&p - &minus).scale(&(int(2) * t).recip());
        check(t, CurveCheck::TangentCoefficient, coefficient == spec.tangent_vector);
    }
    Ok(CurveReport {
        root: *e,
        samples: samples.iter().map(|t| t.to_string()).collect(),
        checks_run,
        failures,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndependenceReport {
    pub vectors: usize,
    pub rank: usize,
    pub expected: usize,
    /// Rank when the whole `k×k` block replaces the closed-orbit basis.
    pub square_block_rank: usize,
}

impl IndependenceReport {
    /// Spans `T(O_k)` with linearly independent vectors.
    pub fn passed(&self) -> bool {
        self.rank == self.expected && self.vectors == self.expected && self.square_block_rank == self.expected
    }
}

pub fn tangent_independence(ctx: &Context) -> IndependenceReport {
    let tangents: Vec<RationalMatrix> = phi_plus(ctx)
        .iter()
        .map(|r| curve(ctx, r).expect("root").tangent_vector)
        .collect();
    let y0 = y0_tangent_basis(ctx);
    let stacked = RationalMatrix::stack_flattened(y0.iter().chain(&tangents)).expect("same size");
    let square = RationalMatrix::stack_flattened(y0_square_block(ctx).iter().chain(&tangents))
        .expect("same size");
    IndependenceReport {
        vectors: y0.len() + tangents.len(),
        rank: stacked.rank(),
        expected: ctx.dim_orbit(),
        square_block_rank: square.rank(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStep {
    pub step: usize,
    pub position: usize,
    /// Names of `V_s^1 … V_s^{n−1}` after this step.
    pub spaces: Vec<String>,
    pub relation: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Blueprint {
    pub flags: usize,
    pub moves: Vec<usize>,
    pub compat: String,
    pub chain: Vec<ChainStep>,
    pub relations: Vec<String>,
    /// Torus-fixed flags `s_{i_1}⋯s_{i_s}` in one-line notation.
    pub fixed_points: Vec<String>,
}

impl Blueprint {
    pub fn to_text(&self) -> String {
        let mut out = format!("flags: {}\nmoves: {:?}\ncompat: {}\n", self.flags, self.moves, self.compat);
        for r in &self.relations {
            out.push_str("  ");
            out.push_str(r);
            out.push('\n');
        }
        out
    }
}

/// The Bott–Samelson style incidence system over a reduced word for `σα`.
pub fn resolution_blueprint(ctx: &Context, lbl: &OrbitLabel, word: &ReducedWord) -> Result<Blueprint> {
    let n = ctx.n();
    let word = ReducedWord::checked(n, word.letters().to_vec())?;
    let got = word.evaluate(n)?;
    let expected = lbl.product();
    if got != expected {
        return Err(Error::WrongEvaluation {
            got: got.to_string(),
            expected: expected.to_string(),
        });
    }
    let mut names: Vec<String> = (0..=n)
        .map(|j| if j == 0 { "0".to_string() } else { format!("K^{j}") })
        .collect();
    let mut chain = Vec::new();
    let mut relations = Vec::new();
    let mut fixed_points = Vec::new();
    let mut prefix = Permutation::identity(n);
    for (s, &i) in word.letters().iter().enumerate() {
        let step = s + 1;
        let new = format!("V_{step}^{i}");
        let relation = if i == 1 {
            format!("{new} ⊂ {}", names[i + 1])
        } else {
            format!("{} ⊂ {new} ⊂ {}", names[i - 1], names[i + 1])
        };
        names[i] = new;
        relations.push(relation.clone());
        prefix = prefix.mul_simple_right(i);
        fixed_points.push(prefix.to_string());
        chain.push(ChainStep {
            step,
            position: i,
            spaces: names[1..n].to_vec(),
            relation,
        });
    }
    let (k, nk) = (ctx.k(), n - ctx.k());
    for i in 1..=n {
        if i <= nk {
            relations.push(format!("u({}) = 0", names[i]));
        } else {
            relations.push(format!("u({}) ⊂ {}", names[i], names[i - nk]));
        }
    }
    Ok(Blueprint {
        flags: word.len(),
        moves: word.letters().to_vec(),
        compat: format!("2-nilpotent rank <= {k}, V_{}-compatible", word.len()),
        chain,
        relations,
        fixed_points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn samples() -> Vec<Rational> {
        vec![int(1), int(-1), int(2), rat(1, 3)]
    }

    #[test]
    fn x_matrices() {
        for n in 1..=8 {
            for k in 0..=n / 2 {
                let c = Context::new(n, k).unwrap();
                assert!(is_two_nilpotent_of_rank(&x_matrix(&c), k));
            }
        }
        let c = Context::new(4, 2).unwrap();
        assert_eq!(x_matrix(&c).support(), vec![(1, 3), (2, 4)]);
    }

    #[test]
    fn representatives_are_in_the_class() {
        for (n, k) in [(4, 2), (5, 2), (6, 2)] {
            let c = Context::new(n, k).unwrap();
            for lbl in c.enumerate_labels(8).unwrap() {
                assert!(is_two_nilpotent_of_rank(&c.rep_matrix(&lbl), k));
            }
        }
    }

    #[test]
    fn stabilizer_membership() {
        let c = Context::new(4, 2).unwrap();
        assert!(in_ck(&c, &RationalMatrix::identity(4)).unwrap());
        let s2 = RationalMatrix::permutation(&Permutation::simple(4, 2).unwrap());
        assert!(!in_ck(&c, &s2).unwrap());
        assert_eq!(in_ck(&c, &RationalMatrix::zeros(4, 4)), Err(Error::SingularMatrix));
        for w in c.wck_elements() {
            assert!(in_ck(&c, &RationalMatrix::permutation(&w)).unwrap());
        }
    }

    #[test]
    fn curves_4_2() {
        let c = Context::new(4, 2).unwrap();
        for r in phi_plus(&c) {
            let rep = verify_curve(&c, &r, &[int(0), int(1), int(2), int(3)]).unwrap();
            assert!(rep.passed(), "{r}: {:?}", rep.failures);
        }
    }

    #[test]
    fn curves_6_2() {
        let c = Context::new(6, 2).unwrap();
        for r in phi_plus(&c) {
            let rep = verify_curve(&c, &r, &[int(1), int(-1), rat(1, 2)]).unwrap();
            assert!(rep.passed(), "{r}: {:?}", rep.failures);
        }
        let rep = verify_curve(&c, &phi_plus(&c)[0], &samples()).unwrap();
        assert_eq!(rep.checks_run, 4 * 6);
    }

    #[test]
    fn independence() {
        for (n, k, rank) in [(4, 2, 8), (4, 1, 6), (6, 2, 16)] {
            let rep = tangent_independence(&Context::new(n, k).unwrap());
            assert_eq!(rep.rank, rank);
            assert!(rep.passed());
        }
    }

    #[test]
    fn schubert_examples() {
        let c = schubert_conditions(&p("4,3,2,1"));
        assert!(c.nontrivial(4).is_empty());
        let nt = schubert_conditions(&p("2,4,1,3")).nontrivial(4);
        let pairs: Vec<(usize, usize, usize)> = nt.iter().map(|c| (c.i, c.j, c.bound)).collect();
        assert!(pairs.contains(&(1, 2, 2)));
        assert!(pairs.contains(&(3, 2, 3)));
        for f in Permutation::all(4) {
            assert!(flag_in_schubert(&Flag::from_permutation(&f), &p("4,3,2,1")));
        }
        assert!(flag_in_schubert(&Flag::standard(4), &Permutation::identity(4)));
        assert!(!flag_in_schubert(&Flag::from_permutation(&p("2,1,3,4")), &Permutation::identity(4)));
    }

    #[test]
    fn compatibility() {
        let c = Context::new(4, 2).unwrap();
        assert!(compatible(&c, &x_matrix(&c), &Flag::standard(4)));
        assert!(compatible(&c, &RationalMatrix::zeros(4, 4), &Flag::from_permutation(&p("3,1,4,2"))));
        let lbl = c.label(p("2,4,1,3"), Permutation::identity(4)).unwrap();
        let u = RationalMatrix::from_i64_rows(&[&[0, 0, 0, 1], &[0, 0, 1, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]]);
        assert!(incidence_member(&c, &u, &Flag::from_permutation(&p("2,1,3,4")), &lbl));
        let u = RationalMatrix::from_i64_rows(&[&[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 0, 0]]);
        assert!(incidence_member(&c, &u, &Flag::from_permutation(&p("1,3,2,4")), &lbl));
        // u(K²) ⊄ K²
        let u = RationalMatrix::from_i64_rows(&[&[0, 0, 0, 0], &[0, 0, 0, 0], &[1, 0, 0, 0], &[0, 1, 0, 0]]);
        for f in Permutation::all(4) {
            assert!(!incidence_member(&c, &u, &Flag::from_permutation(&f), &lbl));
        }
    }

    #[test]
    fn witness_flags() {
        for (n, k) in [(4, 1), (4, 2), (5, 2), (6, 2), (6, 3)] {
            let c = Context::new(n, k).unwrap();
            for lbl in c.enumerate_labels(8).unwrap() {
                assert!(incidence_member(&c, &c.rep_matrix(&lbl), &witness_flag(&lbl), &lbl));
            }
        }
    }

    #[test]
    fn other_minimal_reps_need_not_work() {
        let c = Context::new(4, 2).unwrap();
        let lbl = c.label_of(&Permutation::simple(4, 1).unwrap()).unwrap();
        let s3 = Permutation::simple(4, 3).unwrap();
        assert_ne!(lbl.product(), s3);
        assert!(!incidence_member(&c, &c.rep_matrix(&lbl), &Flag::from_permutation(&s3), &lbl));
    }

    #[test]
    fn blueprint_example() {
        let c = Context::new(4, 2).unwrap();
        let word: ReducedWord = "s2.s1.s3.s2".parse().unwrap();
        let lbl = c.label(word.evaluate(4).unwrap(), Permutation::identity(4)).unwrap();
        let b = resolution_blueprint(&c, &lbl, &word).unwrap();
        assert_eq!(b.flags, 4);
        assert_eq!(
            &b.relations[..4],
            [
                "K^1 ⊂ V_1^2 ⊂ K^3",
                "V_2^1 ⊂ V_1^2",
                "V_1^2 ⊂ V_3^3 ⊂ K^4",
                "V_2^1 ⊂ V_4^2 ⊂ V_3^3",
            ]
        );
        assert_eq!(b.relations[4], "u(V_2^1) = 0");
        assert_eq!(b.relations[7], "u(K^4) ⊂ V_4^2");
        assert_eq!(b.fixed_points.last().unwrap(), "3,4,1,2");
        let bad: ReducedWord = "s1.s1".parse().unwrap();
        assert!(matches!(resolution_blueprint(&c, &lbl, &bad), Err(Error::NotReduced(_))));
        let wrong: ReducedWord = "s1.s2".parse().unwrap();
        assert!(matches!(resolution_blueprint(&c, &lbl, &wrong), Err(Error::WrongEvaluation { .. })));
        let id = resolution_blueprint(&c, &c.identity_label(), &ReducedWord::new(vec![])).unwrap();
        assert_eq!(id.flags, 0);
        assert_eq!(id.relations.len(), 4);
    }
}
