//! Roots of the stabilizer, the torus-stable curves through `x_k`, tangent
//! bounds at `x_k` and the smooth/singular decision rules.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::atlas::{Context, LabelRecord, OrbitLabel};
use crate::error::{Error, Result};
use crate::linalg::{int, Rational, RationalMatrix, RowSpace};
use crate::perm::{find_pattern, transposition, Permutation};
use crate::poset::{leq, leq_witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RootFamily {
    InsideGlk,
    Delta,
    CrossFar,
    TopMiddle,
    MiddleBottom,
}

impl fmt::Display for RootFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RootFamily::InsideGlk => "INSIDE_GLK",
            RootFamily::Delta => "DELTA",
            RootFamily::CrossFar => "CROSS_FAR",
            RootFamily::TopMiddle => "TOP_MIDDLE",
            RootFamily::MiddleBottom => "MIDDLE_BOTTOM",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root {
    pub i: usize,
    pub j: usize,
    pub family: RootFamily,
}

impl Root {
    pub fn new(ctx: &Context, i: usize, j: usize) -> Result<Root> {
        let (n, k) = (ctx.n(), ctx.k());
        if !(1 <= i && i < j && j <= n) {
            return Err(Error::NotARoot { i, j });
        }
        let family = match (ctx.block(i), ctx.block(j)) {
            (1, 1) => RootFamily::InsideGlk,
            (1, 3) if j == i + n - k => RootFamily::Delta,
            (1, 3) => RootFamily::CrossFar,
            (1, 2) => RootFamily::TopMiddle,
            (2, 3) => RootFamily::MiddleBottom,
            _ => return Err(Error::NotARoot { i, j }),
        };
        Ok(Root { i, j, family })
    }

    /// The transposition `r_ε = (i j)`.
    pub fn reflection(&self, n: usize) -> Permutation {
        transposition(n, self.i, self.j).expect("i < j <= n")
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// `φ⁺(C_k)`, sorted by `(i, j)`.
pub fn phi_plus(ctx: &Context) -> Vec<Root> {
    let n = ctx.n();
    let mut roots = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if let Ok(r) = Root::new(ctx, i, j) {
                roots.push(r);
            }
        }
    }
    roots
}

/// `φ⁺_n(C_k)`: drops the outer-block roots with `i + n − k ≥ j`.
pub fn phi_plus_n(ctx: &Context) -> Vec<Root> {
    phi_plus(ctx).into_iter().filter(|r| in_phi_plus_n(ctx, r)).collect()
}

pub fn in_phi_plus_n(ctx: &Context, r: &Root) -> bool {
    let outer = ctx.block(r.i) == 1 && ctx.block(r.j) == 3;
    !(outer && r.i + ctx.n() - ctx.k() >= r.j)
}

/// Roots whose curve stays inside the strictly upper-triangular matrices:
/// `DELTA` never does, an outer-block root does iff `j < i + n − k`.
pub fn phi_plus_upper(ctx: &Context) -> Vec<Root> {
    phi_plus(ctx).into_iter().filter(|r| curve_is_upper(ctx, r)).collect()
}

pub fn curve_is_upper(ctx: &Context, r: &Root) -> bool {
    let outer = ctx.block(r.i) == 1 && ctx.block(r.j) == 3;
    !(outer && r.i + ctx.n() - ctx.k() <= r.j)
}

/// `x_k = E_{1,n−k+1} + … + E_{k,n}`.
pub fn x_matrix(ctx: &Context) -> RationalMatrix {
    let (n, k) = (ctx.n(), ctx.k());
    let mut x = RationalMatrix::zeros(n, n);
    for i in 1..=k {
        x.set(i, i + n - k, int(1));
    }
    x
}

/// `constant + t·linear + t²·quadratic`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSpec {
    pub root: Root,
    pub constant: RationalMatrix,
    pub linear: RationalMatrix,
    pub quadratic: RationalMatrix,
    pub tangent_vector: RationalMatrix,
}

impl CurveSpec {
    pub fn point(&self, t: &Rational) -> RationalMatrix {
        let lin = self.linear.scale(t);
        let quad = self.quadratic.scale(&(t * t));
        &(&self.constant + &lin) + &quad
    }
}

pub fn curve(ctx: &Context, e: &Root) -> Result<CurveSpec> {
    let (n, k) = (ctx.n(), ctx.k());
    let check = Root::new(ctx, e.i, e.j)?;
    if check != *e {
        return Err(Error::NotARoot { i: e.i, j: e.j });
    }
    let (i, j) = (e.i, e.j);
    let el = |r, s| RationalMatrix::elementary(n, r, s);
    let zero = RationalMatrix::zeros(n, n);
    let (linear, quadratic) = match e.family {
        RootFamily::InsideGlk | RootFamily::TopMiddle => (el(j, i + n - k), zero),
        RootFamily::Delta => (
            &el(i + n - k, i + n - k) - &el(i, i),
            -&el(i + n - k, i),
        ),
        RootFamily::CrossFar => (&el(j, i + n - k) - &el(j + k - n, i), zero),
        RootFamily::MiddleBottom => (-&el(j + k - n, i), zero),
    };
    Ok(CurveSpec {
        root: *e,
        constant: x_matrix(ctx),
        tangent_vector: linear.clone(),
        linear,
        quadratic,
    })
}

/// Tangent basis of the closed orbit: `E_{r, s+n−k}` for `r ≤ s ≤ k`.
pub fn y0_tangent_basis(ctx: &Context) -> Vec<RationalMatrix> {
    let (n, k) = (ctx.n(), ctx.k());
    let mut out = Vec::new();
    for r in 1..=k {
        for s in r..=k {
            out.push(RationalMatrix::elementary(n, r, s + n - k));
        }
    }
    out
}

/// The full `k×k` block `E_{r,s}` with `r ≤ k < n−k < s`.
pub fn y0_square_block(ctx: &Context) -> Vec<RationalMatrix> {
    let (n, k) = (ctx.n(), ctx.k());
    let mut out = Vec::new();
    for r in 1..=k {
        for s in n - k + 1..=n {
            out.push(RationalMatrix::elementary(n, r, s));
        }
    }
    out
}

/// Basis of the Lie algebra of `B ∩ C_k`.
pub fn bk_basis(ctx: &Context) -> Vec<RationalMatrix> {
    let (n, k) = (ctx.n(), ctx.k());
    let el = |r, s| RationalMatrix::elementary(n, r, s);
    let mut out = Vec::new();
    for r in 1..=k {
        for s in r..=k {
            out.push(&el(r, s) + &el(r + n - k, s + n - k));
        }
    }
    for r in 1..=n {
        for s in r..=n {
            let (br, bs) = (ctx.block(r), ctx.block(s));
            if (br == 2 && bs == 2) || br < bs {
                out.push(el(r, s));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TkRow {
    pub root: Root,
    pub in_phi_n: bool,
    pub in_t_k: bool,
    /// Label of the coset of `r_ε`.
    pub reflection_label: String,
    /// A member of that coset below `σα`.
    pub witness: Option<String>,
}

/// Membership of every root of `φ⁺(C_k)` in `t_k(σ, α)`.
pub fn t_k_table(ctx: &Context, lbl: &OrbitLabel) -> Vec<TkRow> {
    phi_plus(ctx)
        .into_iter()
        .map(|root| {
            let r_lbl = ctx.label_of(&root.reflection(ctx.n())).expect("valid size");
            let witness = leq_witness(ctx, &r_lbl, lbl);
            TkRow {
                root,
                in_phi_n: in_phi_plus_n(ctx, &root),
                in_t_k: witness.is_some(),
                reflection_label: r_lbl.to_string(),
                witness: witness.map(|w| w.to_string()),
            }
        })
        .collect()
}

pub fn t_k_set(ctx: &Context, lbl: &OrbitLabel) -> Vec<Root> {
    phi_plus(ctx)
        .into_iter()
        .filter(|r| root_below(ctx, r, lbl))
        .collect()
}

fn root_below(ctx: &Context, r: &Root, lbl: &OrbitLabel) -> bool {
    let r_lbl = ctx.label_of(&r.reflection(ctx.n())).expect("valid size");
    leq(ctx, &r_lbl, lbl)
}

/// `t_k` restricted to the roots whose curve is strictly upper-triangular;
/// equals `t_k` on upper labels.
pub fn s_set(ctx: &Context, lbl: &OrbitLabel) -> Vec<Root> {
    phi_plus_upper(ctx)
        .into_iter()
        .filter(|r| root_below(ctx, r, lbl))
        .collect()
}

/// `k(k+1)/2 + |t_k(σ, α)|`.
pub fn tangent_lower_bound(ctx: &Context, lbl: &OrbitLabel) -> usize {
    ctx.dim_closed_orbit() + t_k_set(ctx, lbl).len()
}

/// Exact tangent dimension at `x_k`, valid for upper labels only.
pub fn tangent_dim_upper(ctx: &Context, lbl: &OrbitLabel) -> Result<usize> {
    if !ctx.is_upper(lbl) {
        return Err(Error::NotUpperTriangular(lbl.to_string()));
    }
    Ok(tangent_lower_bound(ctx, lbl))
}

/// Dimension of the `B ∩ C_k`-stable span of the closed-orbit tangents and
/// the tangents of the curves indexed by `t_k(σ, α)`.
pub fn bk_span(ctx: &Context, lbl: &OrbitLabel) -> usize {
    let mut seeds = y0_tangent_basis(ctx);
    for r in t_k_set(ctx, lbl) {
        seeds.push(curve(ctx, &r).expect("root of C_k").tangent_vector);
    }
    bracket_closure(&bk_basis(ctx), seeds).dim()
}

pub(crate) fn bracket_closure(algebra: &[RationalMatrix], seeds: Vec<RationalMatrix>) -> RowSpace {
    let mut space = RowSpace::new();
    let mut queue = Vec::new();
    for v in seeds {
        if space.insert(v.entries()) {
            queue.push(v);
        }
    }
    while let Some(v) = queue.pop() {
        for b in algebra {
            let w = b.bracket(&v);
            if !w.is_zero() && space.insert(w.entries()) {
                queue.push(w);
            }
        }
    }
    space
}

/// Character of the torus `diag(t_1..t_k, u_1..u_{n−2k}, t_1..t_k)`, as
/// exponents of `t_1..t_k, u_1..u_{n−2k}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Character(pub Vec<i32>);

impl Character {
    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn of_entry(ctx: &Context, r: usize, s: usize) -> Character {
        let (n, k) = (ctx.n(), ctx.k());
        let slot = |i: usize| if i > n - k { i - (n - k) - 1 } else { i - 1 };
        let mut e = vec![0; n - k];
        e[slot(r)] += 1;
        e[slot(s)] -= 1;
        Character(e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TangentSource {
    ClosedOrbit { r: usize, s: usize },
    Curve { i: usize, j: usize },
}

impl fmt::Display for TangentSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TangentSource::ClosedOrbit { r, s } => write!(f, "Y0[{r},{s}]"),
            TangentSource::Curve { i, j } => write!(f, "curve({i},{j})"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightBlock {
    pub character: String,
    #[serde(skip)]
    pub exponents: Character,
    pub vectors: Vec<TangentSource>,
}

/// Groups the `2k(n−k)` basis tangent vectors by torus character.
pub fn weight_decomposition(ctx: &Context) -> Vec<WeightBlock> {
    let (n, k) = (ctx.n(), ctx.k());
    let mut blocks: BTreeMap<Character, Vec<TangentSource>> = BTreeMap::new();
    for r in 1..=k {
        for s in r..=k {
            blocks
                .entry(Character::of_entry(ctx, r, s + n - k))
                .or_default()
                .push(TangentSource::ClosedOrbit { r, s });
        }
    }
    for root in phi_plus(ctx) {
        let tv = curve(ctx, &root).expect("root").tangent_vector;
        let (r, s) = tv.support()[0];
        blocks
            .entry(Character::of_entry(ctx, r, s))
            .or_default()
            .push(TangentSource::Curve { i: root.i, j: root.j });
    }
    blocks
        .into_iter()
        .map(|(ch, vectors)| WeightBlock {
            character: character_name(&ch, k),
            exponents: ch,
            vectors,
        })
        .collect()
}

fn character_name(ch: &Character, k: usize) -> String {
    let name = |idx: usize| {
        if idx < k {
            format!("t{}", idx + 1)
        } else {
            format!("u{}", idx - k + 1)
        }
    };
    let side = |sign: i32| {
        ch.0.iter()
            .enumerate()
            .filter(|(_, &e)| e * sign > 0)
            .map(|(i, &e)| if e.abs() == 1 { name(i) } else { format!("{}^{}", name(i), e.abs()) })
            .collect::<Vec<_>>()
            .join("*")
    };
    let (num, den) = (side(1), side(-1));
    match (num.is_empty(), den.is_empty()) {
        (true, true) => "1".to_string(),
        (false, true) => num,
        (true, false) => format!("1/{den}"),
        (false, false) => format!("{num}/{den}"),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Smooth,
    Singular,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Smooth => "smooth",
            Verdict::Singular => "singular",
            Verdict::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rule {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Witness {
    /// `pattern` occurs in `tested` at `positions`.
    Pattern {
        tested: String,
        pattern: Vec<usize>,
        positions: Vec<usize>,
    },
    /// `tested` avoids every listed pattern.
    Avoids { tested: String, avoids: Vec<Vec<usize>> },
    RootCount { t_k: usize, length: usize },
    LowerBound { tangent_lower_bound: usize, dimension: usize },
    Span { bk_span: usize, dimension: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub label: LabelRecord,
    pub verdict: Verdict,
    pub rule: Option<Rule>,
    pub witness: Option<Witness>,
}

fn pattern_rule(tested: &Permutation, patterns: &[&[usize]]) -> (Verdict, Witness) {
    for pat in patterns {
        let p = Permutation::from_images(pat.to_vec()).expect("pattern");
        if let Some(positions) = find_pattern(tested, &p) {
            return (
                Verdict::Singular,
                Witness::Pattern {
                    tested: tested.to_string(),
                    pattern: pat.to_vec(),
                    positions,
                },
            );
        }
    }
    (
        Verdict::Smooth,
        Witness::Avoids {
            tested: tested.to_string(),
            avoids: patterns.iter().map(|p| p.to_vec()).collect(),
        },
    )
}

const SCHUBERT_PATTERNS: [&[usize]; 2] = [&[4, 2, 3, 1], &[3, 4, 1, 2]];

/// Outcome of one rule, or `None` where it does not apply.
pub fn apply_rule(ctx: &Context, lbl: &OrbitLabel, rule: Rule) -> Option<(Verdict, Witness)> {
    let k = ctx.k();
    match rule {
        Rule::R1 => (k == 1).then(|| pattern_rule(&lbl.sigma, &[&[3, 1, 4, 2]])),
        Rule::R2 => (lbl.alpha == ctx.omega()).then(|| {
            let tested = lbl.sigma.compose(&ctx.o_k()).expect("same size");
            pattern_rule(&tested, &SCHUBERT_PATTERNS)
        }),
        Rule::R3 => lbl.sigma.is_identity().then(|| {
            let tested = lbl.alpha.restrict(k).expect("alpha fixes k+1..n");
            pattern_rule(&tested, &SCHUBERT_PATTERNS)
        }),
        Rule::R4 => ctx.is_upper(lbl).then(|| {
            let t_k = t_k_set(ctx, lbl).len();
            let length = lbl.word_length();
            let v = if t_k == length { Verdict::Smooth } else { Verdict::Singular };
            (v, Witness::RootCount { t_k, length })
        }),
        Rule::R5 => {
            let bound = tangent_lower_bound(ctx, lbl);
            let dim = ctx.dimension(lbl);
            (bound > dim).then_some((
                Verdict::Singular,
                Witness::LowerBound {
                    tangent_lower_bound: bound,
                    dimension: dim,
                },
            ))
        }
        Rule::R6 => {
            let span = bk_span(ctx, lbl);
            let dim = ctx.dimension(lbl);
            (span > dim).then_some((Verdict::Singular, Witness::Span { bk_span: span, dimension: dim }))
        }
    }
}

pub const RULES: [Rule; 6] = [Rule::R1, Rule::R2, Rule::R3, Rule::R4, Rule::R5, Rule::R6];

/// Every applicable rule with its outcome, in rule order.
pub fn rule_outcomes(ctx: &Context, lbl: &OrbitLabel) -> Vec<(Rule, Verdict, Witness)> {
    RULES
        .iter()
        .filter_map(|&r| apply_rule(ctx, lbl, r).map(|(v, w)| (r, v, w)))
        .collect()
}

/// First applicable rule wins.
pub fn verdict(ctx: &Context, lbl: &OrbitLabel) -> VerdictReport {
    let first = RULES.iter().find_map(|&r| apply_rule(ctx, lbl, r).map(|(v, w)| (r, v, w)));
    let (verdict, rule, witness) = match first {
        Some((r, v, w)) => (v, Some(r), Some(w)),
        None => (Verdict::Unknown, None, None),
    };
    VerdictReport {
        label: ctx.label_record(lbl),
        verdict,
        rule,
        witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::ReducedWord;

    fn w(n: usize, s: &str) -> Permutation {
        s.parse::<ReducedWord>().unwrap().evaluate(n).unwrap()
    }

    fn pairs(roots: &[Root]) -> Vec<(usize, usize)> {
        roots.iter().map(|r| (r.i, r.j)).collect()
    }

    #[test]
    fn root_sets() {
        let c41 = Context::new(4, 1).unwrap();
        assert_eq!(pairs(&phi_plus(&c41)), vec![(1, 2), (1, 3), (1, 4), (2, 4), (3, 4)]);
        let c42 = Context::new(4, 2).unwrap();
        assert_eq!(pairs(&phi_plus(&c42)), vec![(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]);
        let c62 = Context::new(6, 2).unwrap();
        assert_eq!(phi_plus(&c62).len(), 13);
        let n_roots = pairs(&phi_plus_n(&c62));
        for excluded in [(1, 5), (2, 5), (2, 6)] {
            assert!(!n_roots.contains(&excluded));
        }
        assert!(n_roots.contains(&(1, 6)));
        assert!(Root::new(&c62, 3, 4).is_err());
        assert!(Root::new(&c62, 5, 6).is_err());
        let upper = pairs(&phi_plus_upper(&c62));
        assert!(upper.contains(&(2, 5)) && !upper.contains(&(1, 5)) && !upper.contains(&(1, 6)));
    }

    #[test]
    fn curve_shapes() {
        let c = Context::new(4, 2).unwrap();
        let delta = curve(&c, &Root::new(&c, 1, 3).unwrap()).unwrap();
        assert_eq!(delta.root.family, RootFamily::Delta);
        assert_eq!(delta.tangent_vector.to_string(), "-1,0,0,0;0,0,0,0;0,0,1,0;0,0,0,0");
        assert_eq!(delta.quadratic.support(), vec![(3, 1)]);
        let inside = curve(&c, &Root::new(&c, 1, 2).unwrap()).unwrap();
        assert_eq!(inside.tangent_vector.support(), vec![(2, 3)]);
        assert_eq!(delta.point(&int(0)), x_matrix(&c));
    }

    #[test]
    fn example_two_tangents() {
        let c = Context::new(4, 2).unwrap();
        let id = Permutation::identity(4);
        let top = c.label(w(4, "s2.s1.s3.s2"), id.clone()).unwrap();
        assert_eq!(t_k_set(&c, &top), phi_plus(&c));
        assert_eq!(tangent_lower_bound(&c, &top), 8);
        let mid = c.label(w(4, "s1.s3.s2"), id).unwrap();
        assert_eq!(pairs(&t_k_set(&c, &mid)), vec![(1, 2), (1, 4), (2, 3)]);
        assert_eq!(tangent_lower_bound(&c, &mid), 6);
        assert_eq!(bk_span(&c, &mid), 7);
        assert!(tangent_dim_upper(&c, &mid).is_err());
    }

    #[test]
    fn closed_orbit_is_stable() {
        for (n, k) in [(4, 2), (5, 2), (6, 3), (4, 1)] {
            let c = Context::new(n, k).unwrap();
            let id = c.identity_label();
            assert!(t_k_set(&c, &id).is_empty());
            assert_eq!(bk_span(&c, &id), c.dim_closed_orbit());
            assert_eq!(tangent_dim_upper(&c, &id).unwrap(), c.dimension(&id));
        }
    }

    #[test]
    fn example_three() {
        let c = Context::new(6, 2).unwrap();
        let lbl = c.label(w(6, "s1.s3.s2.s5.s4"), Permutation::identity(6)).unwrap();
        assert_eq!(lbl.sigma.to_string(), "2,4,1,6,3,5");
        let tk = pairs(&t_k_set(&c, &lbl));
        assert_eq!(tk.len(), 9);
        for out in [(1, 5), (1, 6), (2, 5), (2, 6)] {
            assert!(!tk.contains(&out));
        }
        assert_eq!(tangent_dim_upper(&c, &lbl).unwrap(), 12);
        assert_eq!(s_set(&c, &lbl), t_k_set(&c, &lbl));
        let report = verdict(&c, &lbl);
        assert_eq!(report.verdict, Verdict::Singular);
        assert_eq!(report.rule, Some(Rule::R4));
    }

    #[test]
    fn verdicts_4_2() {
        let c = Context::new(4, 2).unwrap();
        let singular: Vec<OrbitLabel> = c
            .enumerate_labels(8)
            .unwrap()
            .into_iter()
            .filter(|l| verdict(&c, l).verdict == Verdict::Singular)
            .collect();
        let s1 = w(4, "s1");
        let id = Permutation::identity(4);
        let expected = [
            c.label(w(4, "s1.s3.s2"), s1).unwrap(),
            c.label(w(4, "s2.s1.s3.s2"), id.clone()).unwrap(),
            c.label(w(4, "s1.s3.s2"), id).unwrap(),
        ];
        assert_eq!(singular.len(), 3);
        for e in &expected {
            assert!(singular.contains(e));
        }
        let r2 = verdict(&c, &expected[0]);
        assert_eq!(r2.rule, Some(Rule::R2));
        assert_eq!(
            r2.witness,
            Some(Witness::Pattern {
                tested: "4,2,3,1".into(),
                pattern: vec![4, 2, 3, 1],
                positions: vec![1, 2, 3, 4],
            })
        );
        assert_eq!(verdict(&c, &expected[1]).rule, Some(Rule::R5));
        assert_eq!(verdict(&c, &expected[2]).rule, Some(Rule::R6));
    }

    #[test]
    fn example_one() {
        let c = Context::new(4, 1).unwrap();
        let lbl = c.label(w(4, "s2.s1.s3"), Permutation::identity(4)).unwrap();
        assert_eq!(lbl.sigma.to_string(), "3,1,4,2");
        let r = verdict(&c, &lbl);
        assert_eq!((r.verdict, r.rule), (Verdict::Singular, Some(Rule::R1)));
        assert!(tangent_lower_bound(&c, &lbl) > 4);
    }

    #[test]
    fn nilradical_roots_versus_upper_labels() {
        let c = Context::new(4, 2).unwrap();
        let lbl = c.label(w(4, "s2"), Permutation::identity(4)).unwrap();
        assert!(c.is_upper(&lbl));
        let tk = t_k_set(&c, &lbl);
        assert_eq!(pairs(&tk), vec![(2, 3)]);
        assert!(!in_phi_plus_n(&c, &tk[0]));
        assert_eq!(s_set(&c, &lbl), tk);
        for curve_root in &tk {
            let cv = curve(&c, curve_root).unwrap();
            assert!(cv.point(&int(5)).is_strictly_upper_triangular());
        }
    }

    #[test]
    fn weights() {
        for (n, k) in [(4, 2), (6, 2), (5, 1), (6, 3)] {
            let c = Context::new(n, k).unwrap();
            let blocks = weight_decomposition(&c);
            let total: usize = blocks.iter().map(|b| b.vectors.len()).sum();
            assert_eq!(total, c.dim_orbit());
            let trivial = blocks.iter().find(|b| b.exponents.is_trivial()).unwrap();
            assert_eq!(trivial.character, "1");
            assert_eq!(trivial.vectors.len(), 2 * k);
            for b in &blocks {
                let e = &b.exponents.0;
                let only_t = e[k..].iter().all(|&x| x == 0);
                if only_t && !b.exponents.is_trivial() {
                    assert_eq!(b.vectors.len(), 2, "{}", b.character);
                }
            }
        }
        let c = Context::new(4, 2).unwrap();
        let names: Vec<String> = weight_decomposition(&c).into_iter().map(|b| b.character).collect();
        assert!(names.contains(&"t2/t1".to_string()));
        assert!(names.contains(&"t1/t2".to_string()));
    }

    #[test]
    fn verdict_json_shape() {
        let c = Context::new(4, 2).unwrap();
        let lbl = c.label(w(4, "s1.s3.s2"), w(4, "s1")).unwrap();
        let json = serde_json::to_value(verdict(&c, &lbl)).unwrap();
        assert_eq!(json["verdict"], "singular");
        assert_eq!(json["rule"], "R2");
        assert_eq!(json["witness"]["pattern"], serde_json::json!([4, 2, 3, 1]));
        assert_eq!(json["label"]["sigma"], "2,4,1,3");
    }
}
