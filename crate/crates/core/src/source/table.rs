//! Cached quadrature tables. Each node stores its log-weight (rule weight times
//! Jacobian times measure), `ln|x|`, `x`, `f(x)` and `ln|f(x)|`, so that any
//! non-negative functional `∫ h(x, f(x)) dμ` is a log-sum over nodes.

use super::family::{Family, Point, Segment};
use crate::error::Result;
use crate::numeric::gauss::{gl16, gl8, GaussRule};
use crate::numeric::levels::{sum_log_levels, LevelBudget, LevelSum};
use crate::numeric::sum::{log_add, log_sum_exp, pairwise};
use std::f64::consts::LN_2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub ln_w: f64,
    pub ln_x: f64,
    pub x: f64,
    pub value: f64,
    pub ln_f: f64,
}

#[derive(Debug, Clone, Default)]
struct NodeSet {
    hi: Vec<Node>,
    lo: Vec<Node>,
}

#[derive(Debug, Clone)]
enum SegmentTable {
    Finite(NodeSet),
    Levels { seg: Segment, levels: Vec<NodeSet> },
}

#[derive(Debug, Clone, Default)]
pub struct QuadTable {
    segments: Vec<SegmentTable>,
    built: bool,
}

fn node(fam: &Family, p: Point, ln_w: f64) -> Node {
    let value = fam.eval_point(p);
    let ln_f = fam.ln_abs(p);
    Node { ln_w, ln_x: p.ln_abs_x, x: p.x, value, ln_f }
}

fn panel_nodes(fam: &Family, rule: &GaussRule, a: f64, b: f64, weight: f64, out: &mut Vec<Node>) {
    for i in 0..rule.nodes.len() {
        let (x, w) = rule.mapped(i, a, b);
        out.push(node(fam, Point::new(x), (w * weight).ln()));
    }
}

/// Nodes of one dyadic level `t ∈ [k ln 2, (k+1) ln 2]` of a graded or tail segment.
fn level_nodes(fam: &Family, seg: Segment, k: usize, rule: &GaussRule) -> Vec<Node> {
    let mut out = Vec::new();
    let (t0, t1) = (k as f64 * LN_2, (k + 1) as f64 * LN_2);
    match seg {
        Segment::Graded { dir, h, weight } => {
            let sub = fam.panels_for_level(h, k);
            let width = (t1 - t0) / sub as f64;
            for s in 0..sub {
                let a = t0 + s as f64 * width;
                for i in 0..rule.nodes.len() {
                    let (t, w) = rule.mapped(i, a, a + width);
                    let ln_x = h.ln() - t;
                    let x = dir * ln_x.exp();
                    let p = Point { x, ln_abs_x: ln_x };
                    out.push(node(fam, p, w.ln() + ln_x + weight.ln()));
                }
            }
        }
        Segment::Tail { dir, x0, weight } => {
            for i in 0..rule.nodes.len() {
                let (t, w) = rule.mapped(i, t0, t1);
                let ln_x = x0.ln() + t;
                let x = dir * ln_x.exp();
                let p = Point { x, ln_abs_x: ln_x };
                out.push(node(fam, p, w.ln() + ln_x + weight.ln()));
            }
        }
        _ => unreachable!("finite segments have no levels"),
    }
    out
}

impl QuadTable {
    fn build(&mut self, fam: &Family) {
        if self.built {
            return;
        }
        for seg in fam.layout() {
            let t = match seg {
                Segment::Trapezoid { n, weight } => {
                    let mut set = NodeSet::default();
                    let lw = (weight / n as f64).ln();
                    for j in 0..n {
                        let x = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
                        set.hi.push(node(fam, Point::new(x), lw));
                    }
                    // Half-resolution trapezoid for the error estimate.
                    set.lo = set.hi.iter().step_by(2).map(|nd| Node { ln_w: nd.ln_w + if n > 1 { LN_2 } else { 0.0 }, ..*nd }).collect();
                    SegmentTable::Finite(set)
                }
                Segment::Panels { a, b, n, weight } => {
                    let mut set = NodeSet::default();
                    let w = (b - a) / n as f64;
                    for i in 0..n {
                        let (pa, pb) = (a + i as f64 * w, a + (i + 1) as f64 * w);
                        panel_nodes(fam, gl16(), pa, pb, weight, &mut set.hi);
                        panel_nodes(fam, gl8(), pa, pb, weight, &mut set.lo);
                    }
                    SegmentTable::Finite(set)
                }
                seg => SegmentTable::Levels { seg, levels: Vec::new() },
            };
            self.segments.push(t);
        }
        self.built = true;
    }

    /// `ln ∫ e^{h(node)} dμ` for a log-integrand `h`, refining levels as needed.
    pub fn ln_integral(&mut self, fam: &Family, h: &dyn Fn(&Node) -> f64, budget: LevelBudget) -> Result<LevelSum> {
        self.build(fam);
        let mut total = f64::NEG_INFINITY;
        let mut err_abs_ln = f64::NEG_INFINITY;
        let mut levels_used = 0;
        for seg in self.segments.iter_mut() {
            let part = match seg {
                SegmentTable::Finite(set) => {
                    let a = log_sum_exp(&set.hi.iter().map(|n| n.ln_w + h(n)).collect::<Vec<_>>());
                    let b = log_sum_exp(&set.lo.iter().map(|n| n.ln_w + h(n)).collect::<Vec<_>>());
                    let rel = if a.is_finite() { (1.0 - (b - a).exp()).abs() } else { 0.0 };
                    LevelSum { ln_total: a, rel_error: rel, levels: 1 }
                }
                SegmentTable::Levels { seg, levels } => {
                    let seg = *seg;
                    let eval = |k: usize, levels: &mut Vec<NodeSet>| {
                        while levels.len() <= k {
                            let idx = levels.len();
                            levels.push(NodeSet { hi: level_nodes(fam, seg, idx, gl16()), lo: level_nodes(fam, seg, idx, gl8()) });
                        }
                        let set = &levels[k];
                        let a = log_sum_exp(&set.hi.iter().map(|n| n.ln_w + h(n)).collect::<Vec<_>>());
                        let b = log_sum_exp(&set.lo.iter().map(|n| n.ln_w + h(n)).collect::<Vec<_>>());
                        (a, b)
                    };
                    sum_log_levels(|k| eval(k, levels), budget)?
                }
            };
            levels_used = levels_used.max(part.levels);
            total = log_add(total, part.ln_total);
            if part.ln_total.is_finite() && part.rel_error > 0.0 {
                err_abs_ln = log_add(err_abs_ln, part.ln_total + part.rel_error.ln());
            }
        }
        let rel_error = if total.is_finite() { (err_abs_ln - total).exp() } else { 0.0 };
        Ok(LevelSum { ln_total: total, rel_error, levels: levels_used })
    }

    /// Signed `∫ g(node) dμ` over the finite part and the first `levels` dyadic levels.
    pub fn signed_integral(&mut self, fam: &Family, g: &dyn Fn(&Node) -> f64, levels: usize) -> f64 {
        self.build(fam);
        let mut parts = Vec::new();
        for seg in self.segments.iter_mut() {
            match seg {
                SegmentTable::Finite(set) => {
                    parts.push(pairwise(&set.hi.iter().map(|n| n.ln_w.exp() * g(n)).collect::<Vec<_>>()));
                }
                SegmentTable::Levels { seg, levels: lv } => {
                    while lv.len() < levels {
                        let idx = lv.len();
                        lv.push(NodeSet { hi: level_nodes(fam, *seg, idx, gl16()), lo: level_nodes(fam, *seg, idx, gl8()) });
                    }
                    for set in lv.iter().take(levels) {
                        parts.push(pairwise(&set.hi.iter().map(|n| n.ln_w.exp() * g(n)).collect::<Vec<_>>()));
                    }
                }
            }
        }
        pairwise(&parts)
    }

    /// Nodes of all finite segments and the first `levels` levels (for sampling-style operators).
    pub fn nodes(&mut self, fam: &Family, levels: usize) -> Vec<Node> {
        self.build(fam);
        let mut out = Vec::new();
        for seg in self.segments.iter_mut() {
            match seg {
                SegmentTable::Finite(set) => out.extend_from_slice(&set.hi),
                SegmentTable::Levels { seg, levels: lv } => {
                    while lv.len() < levels {
                        let idx = lv.len();
                        lv.push(NodeSet { hi: level_nodes(fam, *seg, idx, gl16()), lo: level_nodes(fam, *seg, idx, gl8()) });
                    }
                    for set in lv.iter().take(levels) {
                        out.extend_from_slice(&set.hi);
                    }
                }
            }
        }
        out
    }
}
