//! Branch-and-bound over k-zero-sum-free sets.
//!
//! Candidates are visited in index order with include-first branching, so
//! within any subtree the first set of a given size found is the
//! lexicographically smallest one explored. The tree is cut at a fixed depth
//! into tasks that are searched independently (each with only its own best
//! for pruning), which makes the result and the node count independent of
//! how many threads run the tasks.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use crate::group::GroupSpec;
use crate::subsum::SubsumTable;

use super::symmetry::SymGroup;

/// Number of include decisions made before the tree is split into tasks.
const SPLIT_DEPTH: usize = 2;
const FLUSH_EVERY: u64 = 4096;

pub(crate) struct SearchParams {
    /// Smallest set size worth recording before anything has been found.
    pub seed: usize,
    /// Stop as soon as a set of this size is found.
    pub stop_at: usize,
    pub max_nodes: u64,
    pub max_seconds: f64,
    pub workers: usize,
}

pub(crate) struct SearchOutcome {
    /// Largest recorded set (sorted indices), lexicographically smallest among ties.
    pub best: Option<Vec<u32>>,
    pub nodes: u64,
    /// False when the node or time budget cut the search short.
    pub complete: bool,
}

struct Shared {
    abort: AtomicBool,
    nodes: AtomicU64,
    max_nodes: u64,
    deadline: Option<Instant>,
    /// Smallest task index that reached `stop_at`.
    cutoff: AtomicUsize,
}

impl Shared {
    fn flush(&self, n: u64) {
        let total = self.nodes.fetch_add(n, Ordering::Relaxed) + n;
        if total > self.max_nodes || self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.abort.store(true, Ordering::Relaxed);
        }
    }
}

struct Task {
    members: Vec<u32>,
    cands: Vec<u32>,
    group: SymGroup,
}

struct Searcher<'a> {
    shared: &'a Shared,
    table: SubsumTable,
    order: usize,
    seed: usize,
    stop_at: usize,
    best: Option<Vec<u32>>,
    nodes: u64,
    unflushed: u64,
    task_index: usize,
    hit_stop: bool,
    split: Option<Vec<Task>>,
}

impl Searcher<'_> {
    fn threshold(&self) -> usize {
        self.best.as_ref().map_or(self.seed, |b| b.len() + 1)
    }

    fn halted(&self) -> bool {
        self.hit_stop
            || self.shared.abort.load(Ordering::Relaxed)
            || self.task_index > self.shared.cutoff.load(Ordering::Relaxed)
    }

    fn count_node(&mut self) {
        self.nodes += 1;
        self.unflushed += 1;
        if self.unflushed >= FLUSH_EVERY {
            self.shared.flush(self.unflushed);
            self.unflushed = 0;
        }
    }

    fn record(&mut self) {
        let size = self.table.len();
        if size >= self.threshold() {
            self.best = Some(self.table.members().iter().map(|&x| x as u32).collect());
            if size >= self.stop_at {
                self.hit_stop = true;
                if self.split.is_none() {
                    self.shared
                        .cutoff
                        .fetch_min(self.task_index, Ordering::Relaxed);
                }
            }
        }
    }

    fn expand(&mut self, mut cands: Vec<u32>, group: SymGroup, depth: usize) {
        let mut start = 0;
        loop {
            if self.halted() {
                return;
            }
            let remaining = cands.len() - start;
            if remaining == 0 || self.table.len() + remaining < self.threshold() {
                return;
            }
            let c = cands[start] as usize;
            let orbit = (!group.is_trivial()).then(|| group.orbit(c, &cands[start..]));

            self.table.push(c);
            self.count_node();
            self.record();
            if !self.hit_stop {
                let child: Vec<u32> = cands[start + 1..]
                    .iter()
                    .copied()
                    .filter(|&x| !self.table.blocks(x as usize))
                    .collect();
                let child_group = group.stabilizer(c, self.order);
                match &mut self.split {
                    Some(tasks) if depth + 1 == SPLIT_DEPTH => {
                        if self.table.len() + child.len() >= self.seed && !child.is_empty() {
                            tasks.push(Task {
                                members: self.table.members().iter().map(|&x| x as u32).collect(),
                                cands: child,
                                group: child_group,
                            });
                        }
                    }
                    _ => self.expand(child, child_group, depth + 1),
                }
            }
            self.table.pop();

            match orbit {
                Some(o) if o.len() > 1 => {
                    cands = cands[start..]
                        .iter()
                        .copied()
                        .filter(|x| o.binary_search(x).is_err())
                        .collect();
                    start = 0;
                }
                _ => start += 1,
            }
        }
    }
}

fn lex_better(candidate: &[u32], current: Option<&Vec<u32>>) -> bool {
    match current {
        None => true,
        Some(cur) => {
            candidate.len() > cur.len()
                || (candidate.len() == cur.len() && candidate < cur.as_slice())
        }
    }
}

/// Greedy free set in index order; also the first leaf of the search tree
/// without symmetry.
pub(crate) fn greedy(group: &GroupSpec, k: usize) -> Vec<u32> {
    let mut table = SubsumTable::new(group, k);
    for x in 0..group.size() {
        if !table.blocks(x) {
            table.push(x);
        }
    }
    table.members().iter().map(|&x| x as u32).collect()
}

/// Best set found by one task and the nodes it explored.
type TaskOutcome = (Option<Vec<u32>>, u64);

pub(crate) fn run(
    group: &GroupSpec,
    k: usize,
    root: SymGroup,
    params: &SearchParams,
) -> SearchOutcome {
    let shared = Shared {
        abort: AtomicBool::new(false),
        nodes: AtomicU64::new(0),
        max_nodes: params.max_nodes,
        deadline: if params.max_seconds.is_finite() {
            Some(Instant::now() + Duration::from_secs_f64(params.max_seconds))
        } else {
            None
        },
        cutoff: AtomicUsize::new(usize::MAX),
    };
    let arith = group.arith();
    let order = group.size();

    let mut gen = Searcher {
        shared: &shared,
        table: SubsumTable::with_arith(group, arith.clone(), k),
        order,
        seed: params.seed,
        stop_at: params.stop_at,
        best: None,
        nodes: 0,
        unflushed: 0,
        task_index: 0,
        hit_stop: false,
        split: Some(Vec::new()),
    };
    if params.seed == 0 {
        gen.record();
    }
    let root_cands: Vec<u32> = (0..order as u32)
        .filter(|&x| !gen.table.blocks(x as usize))
        .collect();
    if !gen.hit_stop {
        gen.expand(root_cands, root, 0);
    }
    shared.flush(gen.unflushed);
    let tasks = gen.split.take().unwrap_or_default();
    let mut best = gen.best.take();
    let mut nodes = gen.nodes;
    if gen.hit_stop {
        return SearchOutcome {
            best,
            nodes,
            complete: true,
        };
    }

    let results: Vec<Mutex<Option<TaskOutcome>>> = tasks.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = params.workers.clamp(1, tasks.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| {
                let mut table = SubsumTable::with_arith(group, arith.clone(), k);
                loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= tasks.len() {
                        break;
                    }
                    let task = &tasks[i];
                    for &m in &task.members {
                        table.push(m as usize);
                    }
                    let mut s = Searcher {
                        shared: &shared,
                        table,
                        order,
                        seed: params.seed,
                        stop_at: params.stop_at,
                        best: None,
                        nodes: 0,
                        unflushed: 0,
                        task_index: i,
                        hit_stop: false,
                        split: None,
                    };
                    s.expand(task.cands.clone(), task.group.clone(), SPLIT_DEPTH);
                    shared.flush(s.unflushed);
                    *results[i].lock().expect("no poisoned task slot") = Some((s.best, s.nodes));
                    table = s.table;
                    while table.pop().is_some() {}
                }
            });
        }
    });

    let aborted = shared.abort.load(Ordering::Relaxed);
    let cutoff = shared.cutoff.load(Ordering::Relaxed);
    for (i, slot) in results.into_iter().enumerate() {
        if !aborted && i > cutoff {
            break;
        }
        if let Some((task_best, task_nodes)) = slot.into_inner().expect("no poisoned task slot") {
            nodes += task_nodes;
            if let Some(b) = task_best {
                if lex_better(&b, best.as_ref()) {
                    best = Some(b);
                }
            }
        }
    }
    SearchOutcome {
        best,
        nodes,
        complete: !aborted,
    }
}
