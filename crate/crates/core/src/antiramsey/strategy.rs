use super::exhaustive::{exhaustive_edge_disjoint_search, Budget, Packing};
use super::pipeline::{base_case_n2t2, induction_step, solver_n2t1, threshold};
use crate::error::{Error, Result};
use crate::graph::{validate_family, ColoredGraph};

/// One way of finding `t` edge-disjoint rainbow spanning trees.
pub trait PackingStrategy: Send + Sync {
    fn name(&self) -> &'static str;

    /// Whether the strategy's preconditions hold for this instance.
    fn applies(&self, g: &ColoredGraph, t: usize) -> bool;

    fn pack(&self, g: &ColoredGraph, t: usize, budget: &mut Budget) -> Result<Packing>;
}

fn above_threshold(g: &ColoredGraph, t: usize) -> bool {
    t >= 3 && g.is_complete_simple() && threshold(g.vertex_count(), t).is_ok_and(|k| g.color_count() >= k)
}

struct OddCase;
struct BaseCase;
struct Induction;
struct Exhaustive;

impl PackingStrategy for OddCase {
    fn name(&self) -> &'static str {
        "n2t1"
    }
    fn applies(&self, g: &ColoredGraph, t: usize) -> bool {
        g.vertex_count() == 2 * t + 1 && above_threshold(g, t)
    }
    fn pack(&self, g: &ColoredGraph, t: usize, _: &mut Budget) -> Result<Packing> {
        Ok(Packing::Found(solver_n2t1(g, t)?.trees))
    }
}

impl PackingStrategy for BaseCase {
    fn name(&self) -> &'static str {
        "n2t2"
    }
    fn applies(&self, g: &ColoredGraph, t: usize) -> bool {
        g.vertex_count() == 2 * t + 2 && above_threshold(g, t)
    }
    fn pack(&self, g: &ColoredGraph, t: usize, _: &mut Budget) -> Result<Packing> {
        Ok(Packing::Found(base_case_n2t2(g, t)?.trees))
    }
}

impl PackingStrategy for Induction {
    fn name(&self) -> &'static str {
        "induction"
    }
    fn applies(&self, g: &ColoredGraph, t: usize) -> bool {
        g.vertex_count() >= 2 * t + 3 && above_threshold(g, t)
    }
    fn pack(&self, g: &ColoredGraph, t: usize, _: &mut Budget) -> Result<Packing> {
        Ok(Packing::Found(induction_step(g, t)?.trees))
    }
}

impl PackingStrategy for Exhaustive {
    fn name(&self) -> &'static str {
        "exhaustive"
    }
    fn applies(&self, g: &ColoredGraph, _: usize) -> bool {
        g.edge_count() <= 128
    }
    fn pack(&self, g: &ColoredGraph, t: usize, budget: &mut Budget) -> Result<Packing> {
        exhaustive_edge_disjoint_search(g, t, budget)
    }
}

/// Strategies by name, tried in registration order.
pub struct StrategyRegistry {
    strategies: Vec<Box<dyn PackingStrategy>>,
}

impl Default for StrategyRegistry {
    fn default() -> Self {
        let mut r = StrategyRegistry { strategies: Vec::new() };
        r.register(Box::new(OddCase));
        r.register(Box::new(BaseCase));
        r.register(Box::new(Induction));
        r.register(Box::new(Exhaustive));
        r
    }
}

impl StrategyRegistry {
    pub fn empty() -> Self {
        StrategyRegistry { strategies: Vec::new() }
    }

    /// Adds a strategy, replacing any with the same name.
    pub fn register(&mut self, s: Box<dyn PackingStrategy>) {
        self.strategies.retain(|old| old.name() != s.name());
        self.strategies.push(s);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.strategies.iter().map(|s| s.name()).collect()
    }

    pub fn get(&self, name: &str) -> Result<&dyn PackingStrategy> {
        self.strategies
            .iter()
            .find(|s| s.name() == name)
            .map(|s| s.as_ref())
            .ok_or_else(|| Error::UnknownStrategy(name.to_string()))
    }

    /// The first strategy whose preconditions hold.
    pub fn select(&self, g: &ColoredGraph, t: usize) -> Option<&dyn PackingStrategy> {
        self.strategies.iter().find(|s| s.applies(g, t)).map(|s| s.as_ref())
    }

    /// Runs the named strategy, or the first applicable one, and validates
    /// whatever it returns.
    pub fn solve(&self, g: &ColoredGraph, t: usize, name: Option<&str>, budget: &mut Budget) -> Result<Packing> {
        let s = match name {
            Some(n) => {
                let s = self.get(n)?;
                if !s.applies(g, t) {
                    return Err(Error::Precondition(format!("strategy `{n}` does not apply to this instance")));
                }
                s
            }
            None => self
                .select(g, t)
                .ok_or_else(|| Error::TooLarge("no strategy applies to this instance".into()))?,
        };
        log::debug!("packing with strategy `{}`", s.name());
        let out = s.pack(g, t, budget)?;
        if let Packing::Found(fam) = &out {
            let ok = fam.len() == t && validate_family(g, fam).is_ok() && fam.all_spanning_trees(g);
            if !ok {
                return Err(Error::internal(format!("strategy `{}` returned invalid trees", s.name()), g));
            }
        }
        Ok(out)
    }
}

/// `t` edge-disjoint rainbow spanning trees by the first applicable
/// built-in strategy.
pub fn solve_edge_disjoint_rst(g: &ColoredGraph, t: usize, budget: u64) -> Result<Packing> {
    StrategyRegistry::default().solve(g, t, None, &mut Budget::new(budget))
}
