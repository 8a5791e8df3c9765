//! Integral min-cost flow with arc lower bounds, and min-cost assignment.
//!
//! [`solve_min_cost_flow`] uses successive shortest paths with Dijkstra
//! potentials. Lower bounds are moved into node imbalances and negative-cost
//! arcs start saturated, so every residual arc has nonnegative cost and
//! Dijkstra is valid from the first iteration.

mod assignment;

use std::cmp::Reverse;
use std::collections::BinaryHeap;

pub use assignment::{solve_assignment, Assignment, AssignmentProblem};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowArc {
    pub from: usize,
    pub to: usize,
    pub lower: i64,
    pub upper: i64,
    pub cost: i64,
}

/// A single-commodity network asking for `required` units from `source`
/// to `sink`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    pub nodes: usize,
    pub arcs: Vec<FlowArc>,
    pub source: usize,
    pub sink: usize,
    pub required: i64,
}

impl FlowNetwork {
    pub fn new(nodes: usize, source: usize, sink: usize, required: i64) -> Self {
        Self {
            nodes,
            arcs: Vec::new(),
            source,
            sink,
            required,
        }
    }

    /// Appends an arc and returns its index.
    pub fn add_arc(&mut self, from: usize, to: usize, lower: i64, upper: i64, cost: i64) -> usize {
        self.arcs.push(FlowArc {
            from,
            to,
            lower,
            upper,
            cost,
        });
        self.arcs.len() - 1
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidNetwork(m));
        if self.source >= self.nodes || self.sink >= self.nodes {
            return bad("source or sink out of range".into());
        }
        if self.source == self.sink {
            return bad("source equals sink".into());
        }
        if self.required < 0 {
            return bad(format!("negative required flow {}", self.required));
        }
        for (i, a) in self.arcs.iter().enumerate() {
            if a.from >= self.nodes || a.to >= self.nodes {
                return bad(format!("arc {i} endpoint out of range"));
            }
            if a.lower < 0 || a.lower > a.upper {
                return bad(format!("arc {i} has bounds [{}, {}]", a.lower, a.upper));
            }
            if a.to == self.source {
                return bad(format!("arc {i} enters the source"));
            }
            if a.from == self.sink {
                return bad(format!("arc {i} leaves the sink"));
            }
        }
        Ok(())
    }
}

/// Per-arc integral flow and its total cost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowSolution {
    pub flow: Vec<i64>,
    pub cost: i64,
}

struct Residual {
    head: Vec<usize>,
    cap: Vec<i64>,
    cost: Vec<i64>,
    adj: Vec<Vec<usize>>,
}

impl Residual {
    fn new(n: usize) -> Self {
        Self {
            head: Vec::new(),
            cap: Vec::new(),
            cost: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    /// Adds an edge and its reverse; returns the forward edge id. The
    /// reverse is always `id ^ 1`.
    fn link(&mut self, u: usize, v: usize, cap: i64, rev_cap: i64, cost: i64) -> usize {
        let e = self.head.len();
        self.head.extend([v, u]);
        self.cap.extend([cap, rev_cap]);
        self.cost.extend([cost, -cost]);
        self.adj[u].push(e);
        self.adj[v].push(e + 1);
        e
    }
}

const INF: i64 = i64::MAX / 4;

/// Finds a minimum-cost integral flow, or [`Error::Infeasible`].
///
/// Ties between equal-cost paths are broken by node and arc index, so
/// identical inputs produce identical flows.
pub fn solve_min_cost_flow(net: &FlowNetwork) -> Result<FlowSolution> {
    net.validate()?;
    let n = net.nodes + 2;
    let (super_s, super_t) = (net.nodes, net.nodes + 1);
    let mut res = Residual::new(n);
    let mut imbalance = vec![0i64; net.nodes];
    imbalance[net.source] += net.required;
    imbalance[net.sink] -= net.required;

    let mut fwd = Vec::with_capacity(net.arcs.len());
    for a in &net.arcs {
        let span = a.upper - a.lower;
        // Negative arcs start at their upper bound; the residual reverse edge
        // then carries the (positive) cost of undoing that flow.
        let (base, e) = if a.cost < 0 {
            (a.upper, res.link(a.from, a.to, 0, span, a.cost))
        } else {
            (a.lower, res.link(a.from, a.to, span, 0, a.cost))
        };
        imbalance[a.from] -= base;
        imbalance[a.to] += base;
        fwd.push(e);
    }

    let mut demand = 0i64;
    for (v, &b) in imbalance.iter().enumerate() {
        if b > 0 {
            res.link(super_s, v, b, 0, 0);
            demand += b;
        } else if b < 0 {
            res.link(v, super_t, -b, 0, 0);
        }
    }

    let mut potential = vec![0i64; n];
    let mut dist = vec![INF; n];
    let mut parent = vec![usize::MAX; n];
    let mut pushed = 0i64;
    while pushed < demand {
        dist.fill(INF);
        parent.fill(usize::MAX);
        dist[super_s] = 0;
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((0i64, super_s)));
        while let Some(Reverse((du, u))) = heap.pop() {
            if du > dist[u] {
                continue;
            }
            for &e in &res.adj[u] {
                if res.cap[e] == 0 {
                    continue;
                }
                let v = res.head[e];
                let reduced = res.cost[e] + potential[u] - potential[v];
                debug_assert!(reduced >= 0, "negative reduced cost");
                let nd = du + reduced;
                if nd < dist[v] {
                    dist[v] = nd;
                    parent[v] = e;
                    heap.push(Reverse((nd, v)));
                }
            }
        }
        if dist[super_t] >= INF {
            return Err(Error::Infeasible);
        }
        for v in 0..n {
            if dist[v] < INF {
                potential[v] += dist[v];
            }
        }
        let mut bottleneck = demand - pushed;
        let mut v = super_t;
        while v != super_s {
            let e = parent[v];
            bottleneck = bottleneck.min(res.cap[e]);
            v = res.head[e ^ 1];
        }
        let mut v = super_t;
        while v != super_s {
            let e = parent[v];
            res.cap[e] -= bottleneck;
            res.cap[e ^ 1] += bottleneck;
            v = res.head[e ^ 1];
        }
        pushed += bottleneck;
    }

    let flow: Vec<i64> = net
        .arcs
        .iter()
        .zip(&fwd)
        .map(|(a, &e)| a.lower + res.cap[e ^ 1])
        .collect();
    let cost = net
        .arcs
        .iter()
        .zip(&flow)
        .map(|(a, &f)| {
            debug_assert!(a.cost.checked_mul(f).is_some());
            a.cost * f
        })
        .sum();
    Ok(FlowSolution { flow, cost })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn check_feasible(net: &FlowNetwork, sol: &FlowSolution) {
        let mut balance = vec![0i64; net.nodes];
        for (a, &f) in net.arcs.iter().zip(&sol.flow) {
            assert!(a.lower <= f && f <= a.upper);
            balance[a.from] -= f;
            balance[a.to] += f;
        }
        for (v, &b) in balance.iter().enumerate() {
            let want = if v == net.source {
                -net.required
            } else if v == net.sink {
                net.required
            } else {
                0
            };
            assert_eq!(b, want, "conservation at {v}");
        }
    }

    #[test]
    fn forced_single_arc() {
        let mut net = FlowNetwork::new(2, 0, 1, 1);
        net.add_arc(0, 1, 1, 1, 5);
        let sol = solve_min_cost_flow(&net).unwrap();
        assert_eq!(sol.cost, 5);
        assert_eq!(sol.flow, vec![1]);
    }

    #[test]
    fn cheaper_parallel_arc() {
        let mut net = FlowNetwork::new(2, 0, 1, 1);
        net.add_arc(0, 1, 0, 1, 3);
        net.add_arc(0, 1, 0, 1, 7);
        let sol = solve_min_cost_flow(&net).unwrap();
        assert_eq!((sol.cost, sol.flow), (3, vec![1, 0]));
    }

    #[test]
    fn diamond_with_forced_expensive_branch() {
        // 0 -> 1 -> 3 costs 1 + 1, 0 -> 2 -> 3 costs 3 + 4 with lower bound 1
        // on 0 -> 2. Required 2 units, each branch capacity 2.
        // Feasible integral flows put x on the expensive branch, x in {1, 2}:
        // x = 1: 2 + 7 = 9, x = 2: 14. Optimum 9.
        let mut net = FlowNetwork::new(4, 0, 3, 2);
        net.add_arc(0, 1, 0, 2, 1);
        net.add_arc(1, 3, 0, 2, 1);
        net.add_arc(0, 2, 1, 2, 3);
        net.add_arc(2, 3, 0, 2, 4);
        let sol = solve_min_cost_flow(&net).unwrap();
        check_feasible(&net, &sol);
        assert_eq!(sol.cost, 9);
        assert_eq!(sol.flow, vec![1, 1, 1, 1]);
    }

    #[test]
    fn infeasible_when_capacity_short() {
        let mut net = FlowNetwork::new(2, 0, 1, 3);
        net.add_arc(0, 1, 0, 2, 1);
        assert_eq!(solve_min_cost_flow(&net), Err(Error::Infeasible));
        // Lower bound that cannot be drained.
        let mut net = FlowNetwork::new(3, 0, 2, 0);
        net.add_arc(0, 1, 1, 1, 0);
        assert_eq!(solve_min_cost_flow(&net), Err(Error::Infeasible));
    }

    #[test]
    fn rejects_malformed_networks() {
        let mut net = FlowNetwork::new(2, 0, 1, 1);
        net.add_arc(1, 0, 0, 1, 0);
        assert!(matches!(solve_min_cost_flow(&net), Err(Error::InvalidNetwork(_))));
        let mut net = FlowNetwork::new(2, 0, 1, 1);
        net.add_arc(0, 1, 2, 1, 0);
        assert!(matches!(solve_min_cost_flow(&net), Err(Error::InvalidNetwork(_))));
    }

    #[test]
    fn negative_cycle_is_exploited() {
        // 1 -> 2 -> 1 is a negative cycle that optimal flow must saturate.
        let mut net = FlowNetwork::new(4, 0, 3, 1);
        net.add_arc(0, 1, 0, 1, 0);
        net.add_arc(1, 2, 0, 1, -5);
        net.add_arc(2, 1, 0, 1, 1);
        net.add_arc(1, 3, 0, 1, 0);
        let sol = solve_min_cost_flow(&net).unwrap();
        check_feasible(&net, &sol);
        assert_eq!(sol.cost, -4);
    }

    /// All integral flows by exhaustive enumeration.
    fn brute_min(net: &FlowNetwork) -> Option<i64> {
        fn rec(net: &FlowNetwork, i: usize, flow: &mut Vec<i64>, best: &mut Option<i64>) {
            if i == net.arcs.len() {
                let mut balance = vec![0i64; net.nodes];
                for (a, &f) in net.arcs.iter().zip(flow.iter()) {
                    balance[a.from] -= f;
                    balance[a.to] += f;
                }
                let ok = (0..net.nodes).all(|v| {
                    balance[v]
                        == if v == net.source {
                            -net.required
                        } else if v == net.sink {
                            net.required
                        } else {
                            0
                        }
                });
                if ok {
                    let c: i64 = net.arcs.iter().zip(flow.iter()).map(|(a, f)| a.cost * f).sum();
                    *best = Some(best.map_or(c, |b: i64| b.min(c)));
                }
                return;
            }
            for f in net.arcs[i].lower..=net.arcs[i].upper {
                flow.push(f);
                rec(net, i + 1, flow, best);
                flow.pop();
            }
        }
        let mut best = None;
        rec(net, 0, &mut Vec::new(), &mut best);
        best
    }

    #[test]
    fn matches_exhaustive_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut feasible = 0;
        for _ in 0..2000 {
            let nodes = rng.random_range(2..=5);
            let required = rng.random_range(0..=2);
            let mut net = FlowNetwork::new(nodes, 0, nodes - 1, required);
            for _ in 0..rng.random_range(1..=6) {
                let from = rng.random_range(0..nodes - 1);
                let mut to = rng.random_range(1..nodes);
                if to == from {
                    to = nodes - 1;
                }
                let lower = rng.random_range(0..=1);
                let upper = rng.random_range(lower..=2);
                net.add_arc(from, to, lower, upper, rng.random_range(-4..=6));
            }
            let got = solve_min_cost_flow(&net);
            match brute_min(&net) {
                Some(best) => {
                    feasible += 1;
                    let sol = got.unwrap();
                    check_feasible(&net, &sol);
                    assert_eq!(sol.cost, best, "{net:?}");
                }
                None => assert_eq!(got, Err(Error::Infeasible), "{net:?}"),
            }
        }
        assert!(feasible > 300, "only {feasible} feasible networks sampled");
    }

    #[test]
    fn uniform_shift_moves_cost_not_argmin() {
        // Two-layer assignment network: source -> items -> slots -> sink.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let m = 4;
            let costs: Vec<i64> = (0..m * m).map(|_| rng.random_range(-10..10)).collect();
            let build = |shift: i64| {
                let mut net = FlowNetwork::new(2 * m + 2, 0, 2 * m + 1, 3);
                for i in 0..m {
                    net.add_arc(0, 1 + i, 0, 1, 0);
                    net.add_arc(1 + m + i, 2 * m + 1, 0, 1, 0);
                }
                for i in 0..m {
                    for j in 0..m {
                        net.add_arc(1 + i, 1 + m + j, 0, 1, costs[i * m + j] + shift);
                    }
                }
                net
            };
            let a = solve_min_cost_flow(&build(0)).unwrap();
            let b = solve_min_cost_flow(&build(100)).unwrap();
            assert_eq!(b.cost, a.cost + 3 * 100);
            // a's flow is still optimal after the shift.
            let shifted = build(100);
            let a_shifted: i64 = shifted.arcs.iter().zip(&a.flow).map(|(arc, f)| arc.cost * f).sum();
            assert_eq!(a_shifted, b.cost);
        }
    }

    #[test]
    fn deterministic() {
        let mut net = FlowNetwork::new(4, 0, 3, 2);
        for (u, v) in [(0, 1), (0, 2), (1, 3), (2, 3), (1, 2)] {
            net.add_arc(u, v, 0, 2, 1);
        }
        let a = solve_min_cost_flow(&net).unwrap();
        for _ in 0..5 {
            assert_eq!(solve_min_cost_flow(&net).unwrap(), a);
        }
    }
}
