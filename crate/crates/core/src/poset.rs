//! Bruhat order on orbit closures: `a ⪯ b` iff some member of the coset of `a`
//! lies below `σα` in the Bruhat order of `S_n`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::atlas::{min_length_reps, Context, OrbitLabel};
use crate::error::{Error, Result};
use crate::perm::{bruhat_leq_unchecked, lower_interval, Permutation};

fn coset_members(ctx: &Context, lbl: &OrbitLabel) -> Vec<Permutation> {
    let mut members: Vec<Permutation> = ctx
        .coset_of(&lbl.product())
        .expect("label matches context")
        .members
        .into_iter()
        .collect();
    members.sort_by_cached_key(|m| (m.length(), m.clone()));
    members
}

/// The `(length, lex)`-smallest `τ` in the coset of `a` with `τ ≤ σα`, if any.
pub fn leq_witness(ctx: &Context, a: &OrbitLabel, b: &OrbitLabel) -> Option<Permutation> {
    if a.word_length() > b.word_length() {
        return None;
    }
    let top = b.product();
    coset_members(ctx, a)
        .into_iter()
        .find(|tau| bruhat_leq_unchecked(tau, &top))
}

pub fn leq(ctx: &Context, a: &OrbitLabel, b: &OrbitLabel) -> bool {
    leq_witness(ctx, a, b).is_some()
}

/// Same relation computed from the subword interval below `σα`.
pub fn leq_oracle(ctx: &Context, a: &OrbitLabel, b: &OrbitLabel, cap: usize) -> Result<bool> {
    let below = lower_interval(&b.product(), cap)?;
    Ok(coset_members(ctx, a).iter().any(|tau| below.contains(tau)))
}

/// Oracle relation for every ordered pair of `labels`, sharing one interval per
/// upper label. Entry `[a][b]` answers `labels[a] ⪯ labels[b]`.
pub fn leq_oracle_matrix(ctx: &Context, labels: &[OrbitLabel], cap: usize) -> Result<Vec<Vec<bool>>> {
    let index: BTreeMap<&OrbitLabel, usize> = labels.iter().enumerate().map(|(i, l)| (l, i)).collect();
    let columns: Vec<Vec<bool>> = labels
        .par_iter()
        .map(|b| {
            let below = lower_interval(&b.product(), cap)?;
            let mut col = vec![false; labels.len()];
            for tau in below {
                let lbl = ctx.label_of(&tau)?;
                if let Some(&i) = index.get(&lbl) {
                    col[i] = true;
                }
            }
            Ok(col)
        })
        .collect::<Result<_>>()?;
    Ok((0..labels.len())
        .map(|a| columns.iter().map(|col| col[a]).collect())
        .collect())
}

/// Entry `[a][b]` answers `labels[a] ⪯ labels[b]`.
pub fn leq_matrix(ctx: &Context, labels: &[OrbitLabel]) -> Vec<Vec<bool>> {
    let cosets: Vec<Vec<Permutation>> = labels.par_iter().map(|l| coset_members(ctx, l)).collect();
    let tops: Vec<Permutation> = labels.iter().map(OrbitLabel::product).collect();
    (0..labels.len())
        .into_par_iter()
        .map(|a| {
            (0..labels.len())
                .map(|b| {
                    labels[a].word_length() <= labels[b].word_length()
                        && cosets[a].iter().any(|t| bruhat_leq_unchecked(t, &tops[b]))
                })
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphNode {
    pub id: usize,
    #[serde(with = "perm_str")]
    pub sigma: Permutation,
    #[serde(with = "perm_str")]
    pub alpha: Permutation,
    pub dim: usize,
    pub singular: Option<bool>,
}

impl GraphNode {
    pub fn label(&self) -> OrbitLabel {
        OrbitLabel {
            sigma: self.sigma.clone(),
            alpha: self.alpha.clone(),
        }
    }
}

mod perm_str {
    use super::Permutation;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(p: &Permutation, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(p)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Permutation, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverAttrs {
    pub alpha_descent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BruhatGraph {
    pub n: usize,
    pub k: usize,
    pub nodes: Vec<GraphNode>,
    /// `(lower, upper, attrs)`.
    pub covers: Vec<(usize, usize, CoverAttrs)>,
    /// `(source, target, i)` for `s_i`.
    pub weak: Vec<(usize, usize, usize)>,
}

impl BruhatGraph {
    pub fn context(&self) -> Result<Context> {
        Context::new(self.n, self.k)
    }

    pub fn labels(&self) -> Vec<OrbitLabel> {
        self.nodes.iter().map(GraphNode::label).collect()
    }

    pub fn minima(&self) -> Vec<usize> {
        let has_lower: BTreeSet<usize> = self.covers.iter().map(|c| c.1).collect();
        (0..self.nodes.len()).filter(|i| !has_lower.contains(i)).collect()
    }

    pub fn maxima(&self) -> Vec<usize> {
        let has_upper: BTreeSet<usize> = self.covers.iter().map(|c| c.0).collect();
        (0..self.nodes.len()).filter(|i| !has_upper.contains(i)).collect()
    }

    /// Attaches singularity flags by node index.
    pub fn annotate<F>(&mut self, mut f: F)
    where
        F: FnMut(&OrbitLabel) -> Option<bool>,
    {
        for node in &mut self.nodes {
            node.singular = f(&node.label());
        }
    }

    pub fn export_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn export_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph bruhat_{}_{} {{", self.n, self.k);
        out.push_str("  rankdir=BT;\n  node [shape=box];\n");
        for node in &self.nodes {
            let color = if node.singular == Some(true) { ", color=red" } else { "" };
            let _ = writeln!(
                out,
                "  n{} [label=\"{} | dim {}\"{}];",
                node.id,
                node.label().product(),
                node.dim,
                color
            );
        }
        let mut ranks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for node in &self.nodes {
            ranks.entry(node.dim).or_default().push(node.id);
        }
        for ids in ranks.values() {
            let members: Vec<String> = ids.iter().map(|i| format!("n{i}")).collect();
            let _ = writeln!(out, "  {{ rank=same; {}; }}", members.join("; "));
        }
        for (a, b, attrs) in &self.covers {
            let style = if attrs.alpha_descent { " [style=dashed]" } else { "" };
            let _ = writeln!(out, "  n{a} -> n{b}{style};");
        }
        out.push_str("}\n");
        out
    }
}

/// Hasse diagram of all labels of `ctx`, nodes in enumeration order.
pub fn hasse(ctx: &Context, cap: usize) -> Result<BruhatGraph> {
    let labels = ctx.enumerate_labels(cap)?;
    let leq = leq_matrix(ctx, &labels);
    let covers = transitive_reduction(&leq)
        .into_iter()
        .map(|(a, b)| {
            let descent = !bruhat_leq_unchecked(&labels[a].alpha, &labels[b].alpha);
            (a, b, CoverAttrs { alpha_descent: descent })
        })
        .collect();
    let index: BTreeMap<&OrbitLabel, usize> = labels.iter().enumerate().map(|(i, l)| (l, i)).collect();
    let weak = weak_edges(ctx, cap)?
        .into_iter()
        .map(|(a, b, i)| (index[&a], index[&b], i))
        .collect();
    let nodes = labels
        .iter()
        .enumerate()
        .map(|(id, l)| GraphNode {
            id,
            sigma: l.sigma.clone(),
            alpha: l.alpha.clone(),
            dim: ctx.dimension(l),
            singular: None,
        })
        .collect();
    Ok(BruhatGraph {
        n: ctx.n(),
        k: ctx.k(),
        nodes,
        covers,
        weak,
    })
}

/// Covers of a reflexive partial order given as a boolean matrix, sorted.
pub fn transitive_reduction(leq: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let m = leq.len();
    let strict_below: Vec<FixedBitSet> = (0..m)
        .map(|b| {
            let mut s = FixedBitSet::with_capacity(m);
            for a in 0..m {
                if a != b && leq[a][b] {
                    s.insert(a);
                }
            }
            s
        })
        .collect();
    let mut covers: Vec<(usize, usize)> = (0..m)
        .into_par_iter()
        .flat_map_iter(|b| {
            let mut shadowed = FixedBitSet::with_capacity(m);
            for c in strict_below[b].ones() {
                shadowed.union_with(&strict_below[c]);
            }
            let mut direct = strict_below[b].clone();
            direct.difference_with(&shadowed);
            direct.ones().map(move |a| (a, b)).collect::<Vec<_>>()
        })
        .collect();
    covers.sort_unstable();
    covers
}

/// Edges `c →^i c'` produced by left multiplication of a minimal
/// representative of `c` by `s_i`, raising the minimal length by one.
pub fn weak_edges(ctx: &Context, cap: usize) -> Result<BTreeSet<(OrbitLabel, OrbitLabel, usize)>> {
    let labels = ctx.enumerate_labels(cap)?;
    let edges = labels
        .par_iter()
        .map(|c| {
            let coset = ctx.coset_of(&c.product())?;
            let mut out = Vec::new();
            for w in min_length_reps(&coset) {
                for i in 1..ctx.n() {
                    let w2 = w.mul_simple_left(i);
                    if w2.length() != w.length() + 1 || coset.contains(&w2) {
                        continue;
                    }
                    let target = ctx.label_of(&w2)?;
                    if target.word_length() == c.word_length() + 1 {
                        out.push((c.clone(), target, i));
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(edges.into_iter().flatten().collect())
}
