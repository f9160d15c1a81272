//! Self-checks run by `nilbruhat verify`: every fast computation is compared
//! with an independent slow one or with a structural invariant.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::atlas::{Context, OrbitLabel};
use crate::error::Result;
use crate::exact::{
    in_ck, incidence_member, is_two_nilpotent_of_rank, tangent_independence, verify_curve, witness_flag,
};
use crate::linalg::{Rational, RationalMatrix};
use crate::perm::{bruhat_leq_unchecked, lower_interval, Permutation, DEFAULT_WORD_CAP};
use crate::poset::{hasse, leq_matrix, leq_oracle_matrix};
use crate::tangent::{
    bk_span, curve_is_upper, phi_plus, rule_outcomes, s_set, t_k_set, tangent_lower_bound, Verdict,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl SuiteResult {
    fn new(name: &'static str, failures: Vec<String>, ok_detail: String) -> Self {
        let passed = failures.is_empty();
        let detail = if passed {
            ok_detail
        } else {
            let shown: Vec<&String> = failures.iter().take(5).collect();
            format!("{} failure(s): {:?}", failures.len(), shown)
        };
        SuiteResult { name, passed, detail }
    }
}

/// Prefix-dominance Bruhat order against subword intervals on `S_m`.
pub fn perm_order_suite(m: usize) -> Result<SuiteResult> {
    let perms: Vec<Permutation> = Permutation::all(m).collect();
    let intervals: Vec<BTreeSet<Permutation>> = perms
        .par_iter()
        .map(|w| lower_interval(w, DEFAULT_WORD_CAP))
        .collect::<Result<_>>()?;
    let failures: Vec<String> = perms
        .par_iter()
        .zip(&intervals)
        .flat_map_iter(|(w, below)| {
            perms
                .iter()
                .filter(move |u| bruhat_leq_unchecked(u, w) != below.contains(u))
                .map(move |u| format!("{u} vs {w}"))
        })
        .collect();
    let pairs = perms.len() * perms.len();
    Ok(SuiteResult::new("perm-order", failures, format!("S_{m}: {pairs} pairs agree")))
}

/// Every permutation lands in exactly one coset, each of size `|W(C_k)|`.
pub fn coset_partition_suite(ctx: &Context, labels: &[OrbitLabel]) -> Result<SuiteResult> {
    let mut sizes: BTreeMap<OrbitLabel, usize> = BTreeMap::new();
    for w in Permutation::all(ctx.n()) {
        *sizes.entry(ctx.label_of(&w)?).or_default() += 1;
    }
    let expected = ctx.wck_elements().len();
    let mut failures = Vec::new();
    if sizes.len() as u128 != ctx.label_count() || sizes.len() != labels.len() {
        failures.push(format!("{} cosets, {} labels", sizes.len(), labels.len()));
    }
    for (lbl, size) in &sizes {
        if *size != expected {
            failures.push(format!("{lbl}: size {size}"));
        }
        if ctx.coset_of(&lbl.product())?.min_length() != lbl.word_length() {
            failures.push(format!("{lbl}: product is not of minimal length"));
        }
    }
    Ok(SuiteResult::new(
        "coset-partition",
        failures,
        format!("{} cosets of size {expected}", sizes.len()),
    ))
}

/// Orbit order by coset witnesses against subword intervals.
pub fn orbit_order_suite(ctx: &Context, labels: &[OrbitLabel]) -> Result<SuiteResult> {
    let fast = leq_matrix(ctx, labels);
    let slow = leq_oracle_matrix(ctx, labels, DEFAULT_WORD_CAP)?;
    let mut failures = Vec::new();
    for (a, la) in labels.iter().enumerate() {
        for (b, lb) in labels.iter().enumerate() {
            if fast[a][b] != slow[a][b] {
                failures.push(format!("{la} vs {lb}"));
            }
            if a != b && fast[a][b] && fast[b][a] {
                failures.push(format!("antisymmetry: {la} vs {lb}"));
            }
            if fast[a][b] && a != b && la.word_length() >= lb.word_length() {
                failures.push(format!("dimension: {la} vs {lb}"));
            }
        }
    }
    let n = labels.len();
    Ok(SuiteResult::new("orbit-order", failures, format!("{} pairs agree", n * n)))
}

pub fn hasse_suite(ctx: &Context, cap: usize) -> Result<SuiteResult> {
    let g = hasse(ctx, cap)?;
    let mut failures = Vec::new();
    let (min, max) = (g.minima(), g.maxima());
    if min.len() != 1 || !g.nodes[min[0]].label().sigma.is_identity() || !g.nodes[min[0]].label().alpha.is_identity() {
        failures.push(format!("minima {min:?}"));
    }
    if max.len() != 1 || g.nodes[max[0]].dim != ctx.dim_orbit() {
        failures.push(format!("maxima {max:?}"));
    }
    let covers: BTreeSet<(usize, usize)> = g.covers.iter().map(|c| (c.0, c.1)).collect();
    for (a, b) in &covers {
        if g.nodes[*a].dim >= g.nodes[*b].dim {
            failures.push(format!("cover {a}->{b} does not raise dimension"));
        }
    }
    for (a, b, i) in &g.weak {
        if g.nodes[*b].dim != g.nodes[*a].dim + 1 || !covers.contains(&(*a, *b)) {
            failures.push(format!("weak edge {a}->{b} via s{i}"));
        }
    }
    let reached: BTreeSet<usize> = g.weak.iter().map(|e| e.1).collect();
    if reached.len() + 1 != g.nodes.len() {
        failures.push(format!("{} of {} nodes reached by weak edges", reached.len(), g.nodes.len() - 1));
    }
    Ok(SuiteResult::new(
        "hasse",
        failures,
        format!("{} nodes, {} covers, {} weak edges", g.nodes.len(), g.covers.len(), g.weak.len()),
    ))
}

pub fn representative_suite(ctx: &Context, labels: &[OrbitLabel]) -> SuiteResult {
    let failures: Vec<String> = labels
        .par_iter()
        .filter_map(|lbl| {
            let u = ctx.rep_matrix(lbl);
            if !is_two_nilpotent_of_rank(&u, ctx.k()) {
                return Some(format!("{lbl}: not square-zero of rank k"));
            }
            if !incidence_member(ctx, &u, &witness_flag(lbl), lbl) {
                return Some(format!("{lbl}: witness flag rejected"));
            }
            if ctx.tableau(lbl).is_row_standard() != u.is_strictly_upper_triangular() {
                return Some(format!("{lbl}: tableau and matrix disagree"));
            }
            None
        })
        .collect();
    SuiteResult::new("representatives", failures, format!("{} labels", labels.len()))
}

pub fn stabilizer_suite(ctx: &Context) -> Result<SuiteResult> {
    let n = ctx.n();
    let mut failures = Vec::new();
    let mut tested = 0;
    let mut candidates: Vec<RationalMatrix> = ctx.wck_elements().iter().map(RationalMatrix::permutation).collect();
    candidates.extend((1..n).map(|i| RationalMatrix::permutation(&Permutation::simple(n, i).expect("i < n"))));
    for g in &candidates {
        tested += 1;
        if let Err(e) = in_ck(ctx, g) {
            failures.push(e.to_string());
        }
    }
    Ok(SuiteResult::new("stabilizer", failures, format!("{tested} matrices, both tests agree")))
}

pub fn curve_suite(ctx: &Context, samples: &[Rational]) -> Result<SuiteResult> {
    let roots = phi_plus(ctx);
    let reports = roots
        .par_iter()
        .map(|r| verify_curve(ctx, r, samples))
        .collect::<Result<Vec<_>>>()?;
    let checks: usize = reports.iter().map(|r| r.checks_run).sum();
    let failures = reports
        .iter()
        .flat_map(|r| r.failures.iter().map(move |f| format!("{} at t={}: {}", r.root, f.t, f.check)))
        .collect();
    Ok(SuiteResult::new(
        "curves",
        failures,
        format!("{} roots, {checks} identities", roots.len()),
    ))
}

pub fn independence_suite(ctx: &Context) -> SuiteResult {
    let rep = tangent_independence(ctx);
    let failures = if rep.passed() {
        vec![]
    } else {
        vec![format!("{rep:?}")]
    };
    SuiteResult::new(
        "tangent-independence",
        failures,
        format!("{} vectors of rank {}", rep.vectors, rep.rank),
    )
}

/// Agreement of all applicable rules, the bound chain, and `t_k` monotonicity.
pub fn verdict_suite(ctx: &Context, labels: &[OrbitLabel]) -> SuiteResult {
    let failures: Vec<String> = labels
        .par_iter()
        .flat_map_iter(|lbl| {
            let mut f = Vec::new();
            let outcomes = rule_outcomes(ctx, lbl);
            let verdicts: BTreeSet<String> = outcomes.iter().map(|o| o.1.to_string()).collect();
            if verdicts.len() > 1 {
                f.push(format!("{lbl}: rules disagree {outcomes:?}"));
            }
            let lower = tangent_lower_bound(ctx, lbl);
            let span = bk_span(ctx, lbl);
            let dim = ctx.dimension(lbl);
            if span < lower {
                f.push(format!("{lbl}: span {span} < bound {lower}"));
            }
            if lower < dim {
                f.push(format!("{lbl}: bound {lower} < dim {dim}"));
            }
            if outcomes.first().map(|o| o.1) == Some(Verdict::Smooth) && lower != dim {
                f.push(format!("{lbl}: smooth but bound {lower} != dim {dim}"));
            }
            let tk = t_k_set(ctx, lbl);
            let s = s_set(ctx, lbl);
            if !s.iter().all(|r| tk.contains(r)) {
                f.push(format!("{lbl}: s_set not within t_k"));
            }
            if ctx.is_upper(lbl) && (s != tk || !tk.iter().all(|r| curve_is_upper(ctx, r))) {
                f.push(format!("{lbl}: upper label with t_k outside the nilradical"));
            }
            f
        })
        .collect();
    SuiteResult::new("verdicts", failures, format!("{} labels", labels.len()))
}

pub fn monotonicity_suite(ctx: &Context, labels: &[OrbitLabel]) -> SuiteResult {
    let leq = leq_matrix(ctx, labels);
    let sets: Vec<BTreeSet<_>> = labels.par_iter().map(|l| t_k_set(ctx, l).into_iter().collect()).collect();
    let mut failures = Vec::new();
    for a in 0..labels.len() {
        for b in 0..labels.len() {
            if leq[a][b] && !sets[a].is_subset(&sets[b]) {
                failures.push(format!("{} vs {}", labels[a], labels[b]));
            }
        }
    }
    SuiteResult::new("t_k-monotone", failures, "t_k grows along the order".into())
}

pub fn springer_suite(ctx: &Context, labels: &[OrbitLabel]) -> SuiteResult {
    let ov = labels.iter().filter(|l| ctx.is_orbital_variety(l)).count();
    let syt = ctx.standard_tableaux().len();
    let upper = labels.iter().filter(|l| ctx.is_upper(l)).count();
    let involutions = Permutation::all(ctx.n())
        .filter(|w| w.compose(w).map(|s| s.is_identity()).unwrap_or(false))
        .filter(|w| (1..=ctx.n()).filter(|&i| w.at(i) > i).count() == ctx.k())
        .count();
    let mut failures = Vec::new();
    if ov != syt {
        failures.push(format!("{ov} orbital varieties vs {syt} standard tableaux"));
    }
    if upper != involutions {
        failures.push(format!("{upper} upper labels vs {involutions} involutions"));
    }
    SuiteResult::new(
        "springer",
        failures,
        format!("{ov} orbital varieties, {upper} upper labels"),
    )
}

/// Runs every suite that fits under `cap`.
pub fn run_all(ctx: &Context, cap: usize, samples: &[Rational]) -> Result<Vec<SuiteResult>> {
    let labels = ctx.enumerate_labels(cap)?;
    let out = vec![
        perm_order_suite(ctx.n().min(5))?,
        coset_partition_suite(ctx, &labels)?,
        orbit_order_suite(ctx, &labels)?,
        hasse_suite(ctx, cap)?,
        representative_suite(ctx, &labels),
        stabilizer_suite(ctx)?,
        curve_suite(ctx, samples)?,
        independence_suite(ctx),
        verdict_suite(ctx, &labels),
        monotonicity_suite(ctx, &labels),
        springer_suite(ctx, &labels),
    ];
    Ok(out)
}
