use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::time::Instant;

use crate::binom::binom;
use crate::error::Result;
use crate::vertex_set::VertexSet;

use super::universe::{filtered_out, Budget, Collector, Tracker, Universe, BUDGET_CHUNK};
use super::{SearchProblem, SearchResult};

struct Ctx<'a> {
    p: &'a SearchProblem,
    u: Universe,
    pairwise: bool,
    /// Floor of the codegree inequality at ℓ = k-1 for each edge count.
    bey: Vec<u128>,
    cap: usize,
    incumbent: AtomicU64,
    budget: Budget,
}

impl Ctx<'_> {
    fn incumbent(&self) -> u128 {
        self.incumbent.load(Ordering::Relaxed) as u128
    }

    fn raise(&self, value: u128) {
        self.incumbent.fetch_max(value.min(u64::MAX as u128) as u64, Ordering::Relaxed);
    }

    fn edge(&self, i: u32) -> VertexSet {
        self.u.edges[i as usize]
    }
}

// One unit of parallel work: a node of the enumeration tree.
struct Task {
    chosen: Vec<u32>,
    p: Vec<u32>,
    x: Vec<u32>,
}

pub(super) fn run(p: &SearchProblem) -> Result<SearchResult> {
    let start = Instant::now();
    let u = Universe::new(p.n, p.k)?;
    let (n, k) = (p.n, p.k);
    let spread = binom(n - 1, k - 1);
    let bey = (0..=u.len() as u128)
        .map(|m| k as u128 * m * m / spread + (k - 1) as u128 * (n - k) as u128 * m)
        .collect();
    let mut cap = u.len();
    if p.options.l1_caps {
        let mut caps = vec![p.constraint.edge_cap(n, k)];
        if let Some(t) = p.options.nontrivial {
            caps.push(p.constraint.nontrivial_edge_cap(n, k, t));
        }
        for c in caps.into_iter().flatten() {
            cap = cap.min(c.min(u.len() as u128) as usize);
        }
    }
    let ctx = Ctx {
        p,
        pairwise: p.constraint.is_pairwise(),
        u,
        bey,
        cap,
        incumbent: AtomicU64::new(0),
        budget: Budget::new(p, start),
    };
    seed(&ctx);

    let root_p: Vec<u32> = (0..ctx.u.len() as u32)
        .filter(|&i| p.constraint.admits_extension(&[], k, ctx.edge(i)))
        .collect();
    let root = Task {
        chosen: Vec::new(),
        p: root_p,
        x: Vec::new(),
    };
    let threads = p.limits.threads;
    let parts = if threads == 1 {
        let mut w = Worker::new(&ctx);
        w.run(&root);
        vec![w.out]
    } else {
        let mut tasks = vec![root];
        for _ in 0..3 {
            if tasks.len() >= 8 * threads {
                break;
            }
            tasks = tasks.into_iter().flat_map(|t| expand(&ctx, t)).collect();
        }
        let next = AtomicUsize::new(0);
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..threads)
                .map(|_| {
                    s.spawn(|| {
                        let mut w = Worker::new(&ctx);
                        while let Some(task) = tasks.get(next.fetch_add(1, Ordering::Relaxed)) {
                            w.run(task);
                        }
                        w.out
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("search worker panicked")).collect()
        })
    };
    let merged = Collector::merge(parts, p.limits.max_optima);
    let certified = !ctx.budget.exhausted();
    Ok(merged.into_result(&ctx.u, p, certified, start))
}

// Greedy maximal families give a starting incumbent; each favours edges
// through one vertex.
fn seed(ctx: &Ctx) {
    let (n, k) = (ctx.p.n, ctx.p.k);
    for v in 0..=n {
        let mut order: Vec<u32> = (0..ctx.u.len() as u32).collect();
        if v > 0 {
            order.sort_by_key(|&i| !ctx.edge(i).contains(v));
        }
        let mut family: Vec<VertexSet> = Vec::new();
        for i in order {
            let e = ctx.edge(i);
            if ctx.p.constraint.admits_extension(&family, k, e) {
                family.push(e);
            }
        }
        if filtered_out(ctx.p, &family) {
            continue;
        }
        let mut idx: Vec<u32> = family
            .iter()
            .map(|e| ctx.u.edges.binary_search(e).expect("universe edge") as u32)
            .collect();
        idx.sort_unstable();
        let mut t = Tracker::new(&ctx.u);
        for &i in &idx {
            t.add(&ctx.u, i);
        }
        ctx.raise(t.co2);
    }
}

fn expand(ctx: &Ctx, task: Task) -> Vec<Task> {
    if task.p.is_empty() {
        return vec![task];
    }
    let family: Vec<VertexSet> = task.chosen.iter().map(|&i| ctx.edge(i)).collect();
    let mut out = Vec::with_capacity(task.p.len());
    for (pos, &e) in task.p.iter().enumerate() {
        let mut grown = family.clone();
        grown.push(ctx.edge(e));
        let ok = |q: &&u32| extension_ok(ctx, &grown, ctx.edge(e), ctx.edge(**q));
        let p: Vec<u32> = task.p[pos + 1..].iter().filter(ok).copied().collect();
        let x: Vec<u32> = task.x.iter().chain(&task.p[..pos]).filter(ok).copied().collect();
        let mut chosen = task.chosen.clone();
        chosen.push(e);
        out.push(Task { chosen, p, x });
    }
    out
}

// `family` already contains `added`; for pairwise rules only the new edge matters.
fn extension_ok(ctx: &Ctx, family: &[VertexSet], added: VertexSet, q: VertexSet) -> bool {
    if ctx.pairwise {
        ctx.p.constraint.pair_ok(added, q)
    } else {
        ctx.p.constraint.admits_extension(family, ctx.p.k, q)
    }
}

struct Worker<'a> {
    ctx: &'a Ctx<'a>,
    tracker: Tracker,
    chosen: Vec<u32>,
    family: Vec<VertexSet>,
    out: Collector,
    pending: u64,
    stopped: bool,
}

impl<'a> Worker<'a> {
    fn new(ctx: &'a Ctx<'a>) -> Self {
        Worker {
            ctx,
            tracker: Tracker::new(&ctx.u),
            chosen: Vec::new(),
            family: Vec::new(),
            out: Collector::default(),
            pending: 0,
            stopped: false,
        }
    }

    fn push(&mut self, e: u32) {
        self.tracker.add(&self.ctx.u, e);
        self.chosen.push(e);
        self.family.push(self.ctx.edge(e));
    }

    fn pop(&mut self) {
        let e = self.chosen.pop().expect("non-empty");
        self.family.pop();
        self.tracker.remove(&self.ctx.u, e);
    }

    fn run(&mut self, task: &Task) {
        for &e in &task.chosen {
            self.push(e);
        }
        self.node(&task.p, &task.x);
        for _ in &task.chosen {
            self.pop();
        }
    }

    fn record(&mut self, extra: &[u32]) {
        let mut family = self.family.clone();
        family.extend(extra.iter().map(|&i| self.ctx.edge(i)));
        if filtered_out(self.ctx.p, &family) {
            return;
        }
        let mut idx = self.chosen.clone();
        idx.extend_from_slice(extra);
        idx.sort_unstable();
        let mut value = self.tracker.co2;
        if !extra.is_empty() {
            for &e in extra {
                self.tracker.add(&self.ctx.u, e);
            }
            value = self.tracker.co2;
            for &e in extra {
                self.tracker.remove(&self.ctx.u, e);
            }
        }
        self.out.offer(value, &idx, self.ctx.p.limits.max_optima);
        self.ctx.raise(value);
    }

    fn node(&mut self, p: &[u32], x: &[u32]) {
        if self.stopped {
            return;
        }
        self.out.nodes += 1;
        self.pending += 1;
        if self.pending >= BUDGET_CHUNK {
            if !self.ctx.budget.charge(self.pending) {
                self.stopped = true;
                return;
            }
            self.pending = 0;
        }
        if p.is_empty() {
            if x.is_empty() {
                self.record(&[]);
            }
            return;
        }
        let ctx = self.ctx;
        let opts = &ctx.p.options;
        if let Some(t) = opts.nontrivial {
            // every family below lies inside chosen ∪ p, so its common
            // intersection only grows
            let inter = self
                .family
                .iter()
                .copied()
                .chain(p.iter().map(|&i| ctx.edge(i)))
                .fold(VertexSet::full(ctx.p.n), VertexSet::intersection);
            if inter.len() >= t {
                return;
            }
        }
        let compatible_with_p = |xi: u32| p.iter().all(|&q| ctx.p.constraint.pair_ok(ctx.edge(xi), ctx.edge(q)));
        if ctx.pairwise && opts.maximality_pruning && x.iter().any(|&xi| compatible_with_p(xi)) {
            return;
        }
        if opts.bound_pruning {
            let reach = (self.chosen.len() + p.len()).min(ctx.cap);
            let incumbent = ctx.incumbent();
            if ctx.bey[reach] < incumbent {
                return;
            }
            for &e in p {
                self.tracker.add(&ctx.u, e);
            }
            let closure = self.tracker.co2;
            for &e in p {
                self.tracker.remove(&ctx.u, e);
            }
            if closure < incumbent {
                return;
            }
        }
        if self.closure_feasible(p) {
            // chosen ∪ p is the only maximal family left if nothing in x fits
            let blocked = x.iter().all(|&xi| {
                if ctx.pairwise {
                    !compatible_with_p(xi)
                } else {
                    let mut all = self.family.clone();
                    all.extend(p.iter().map(|&i| ctx.edge(i)));
                    !ctx.p.constraint.admits_extension(&all, ctx.p.k, ctx.edge(xi))
                }
            });
            if blocked {
                self.record(p);
            }
            return;
        }

        let e = *p
            .iter()
            .max_by_key(|&&i| (self.tracker.gain(&ctx.u, i), std::cmp::Reverse(i)))
            .expect("p non-empty");
        let rest: Vec<u32> = p.iter().copied().filter(|&i| i != e).collect();
        self.push(e);
        let added = ctx.edge(e);
        let p_in: Vec<u32> = rest
            .iter()
            .copied()
            .filter(|&q| extension_ok(ctx, &self.family, added, ctx.edge(q)))
            .collect();
        let x_in: Vec<u32> = x
            .iter()
            .copied()
            .filter(|&q| extension_ok(ctx, &self.family, added, ctx.edge(q)))
            .collect();
        self.node(&p_in, &x_in);
        self.pop();
        let mut x_out = x.to_vec();
        x_out.push(e);
        self.node(&rest, &x_out);
    }

    fn closure_feasible(&self, p: &[u32]) -> bool {
        let ctx = self.ctx;
        if ctx.pairwise {
            return p
                .iter()
                .enumerate()
                .all(|(a, &i)| p[a + 1..].iter().all(|&j| ctx.p.constraint.pair_ok(ctx.edge(i), ctx.edge(j))));
        }
        let mut all = self.family.clone();
        for &i in p {
            let e = ctx.edge(i);
            if !ctx.p.constraint.admits_extension(&all, ctx.p.k, e) {
                return false;
            }
            all.push(e);
        }
        true
    }
}
