//! Functions on the torus or the line drawn from the family registry.

use super::family::{Domain, Family, Point};
use super::table::{Node, QuadTable};
use crate::error::Result;
use crate::numeric::levels::{LevelBudget, LevelSum};
use std::sync::{Arc, Mutex};

/// A registry function times a stack of amplitudes. The quadrature table is
/// shared between every scaled copy, and all norms are computed on the base
/// function and multiplied by the amplitudes afterwards, so scaling is exact.
#[derive(Debug, Clone)]
pub struct SampledFunction {
    family: Arc<Family>,
    amps: Vec<f64>,
    table: Arc<Mutex<QuadTable>>,
}

impl SampledFunction {
    pub fn new(family: Family) -> Self {
        SampledFunction { family: Arc::new(family), amps: Vec::new(), table: Arc::new(Mutex::new(QuadTable::default())) }
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn domain(&self) -> Domain {
        self.family.domain()
    }

    pub fn name(&self) -> String {
        if self.amps.is_empty() {
            self.family.name()
        } else {
            format!("{}*{}", self.amplitude(), self.family.name())
        }
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amps
    }

    /// Product of the amplitude stack.
    pub fn amplitude(&self) -> f64 {
        self.amps.iter().fold(1.0, |acc, s| s * acc)
    }

    /// `|λ|`-scaling of a non-negative base quantity, innermost amplitude first.
    pub fn apply_abs_amplitude(&self, v: f64) -> f64 {
        self.amps.iter().fold(v, |acc, s| s.abs() * acc)
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut amps = self.amps.clone();
        amps.push(s);
        SampledFunction { family: self.family.clone(), amps, table: self.table.clone() }
    }

    /// The unscaled function sharing this one's table.
    pub fn base(&self) -> Self {
        SampledFunction { family: self.family.clone(), amps: Vec::new(), table: self.table.clone() }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.amps.iter().fold(self.family.eval(x), |acc, s| s * acc)
    }

    pub fn eval_point(&self, p: Point) -> f64 {
        self.amps.iter().fold(self.family.eval_point(p), |acc, s| s * acc)
    }

    pub fn singular_points(&self) -> Vec<f64> {
        self.family.singular_points()
    }

    /// `ln ∫ e^{h(node)} dμ` over the base function's nodes.
    pub fn ln_integral(&self, h: &dyn Fn(&Node) -> f64, budget: LevelBudget) -> Result<LevelSum> {
        let mut t = self.table.lock().expect("quadrature table lock");
        t.ln_integral(&self.family, h, budget)
    }

    /// Signed `∫ g(node) dμ` over the base function's nodes.
    pub fn signed_integral(&self, g: &dyn Fn(&Node) -> f64, levels: usize) -> f64 {
        let mut t = self.table.lock().expect("quadrature table lock");
        t.signed_integral(&self.family, g, levels)
    }

    pub fn nodes(&self, levels: usize) -> Vec<Node> {
        let mut t = self.table.lock().expect("quadrature table lock");
        t.nodes(&self.family, levels)
    }
}
