//! Deterministic enumeration of YBE solutions by backtracking.
//!
//! Solutions stream in lexicographic order of `(alpha rows, beta rows)`.
//! The search assigns all alpha rows first; condition (i) of the verifier
//! then pins, for every pair `(x, y)`, the set of rows `β_y(x)` may point
//! to, and beta rows are backtracked against those sets with incremental
//! condition-(ii) pruning. For the involutive filters the beta table is
//! forced outright by `β_y(x) = α_{α_x(y)}⁻¹(x)`.
//!
//! The work is partitioned by the choice of the first alpha row; branches
//! are independent, so `jobs > 1` maps them across threads and merges in
//! branch order, byte-identical to a sequential run. The node budget and
//! the emission limit are enforced per branch (plus a final global
//! truncation), which keeps the output independent of `jobs`.

use rayon::prelude::*;

use crate::perm::Perm;
use crate::solution::FiniteSolution;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SolutionFilter {
    All,
    Involutive,
    Symmetric,
}

#[derive(Clone, Copy, Debug)]
pub struct EnumOptions {
    pub filter: SolutionFilter,
    /// Node budget per first-row branch; `None` is unbounded.
    pub budget: Option<u64>,
    /// Maximum number of emitted solutions (per branch and in total).
    pub limit: Option<usize>,
    pub jobs: usize,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions { filter: SolutionFilter::All, budget: None, limit: None, jobs: 1 }
    }
}

#[derive(Clone, Debug)]
pub struct EnumOutcome {
    pub solutions: Vec<FiniteSolution>,
    /// False when a budget or limit cut the search short.
    pub complete: bool,
    pub nodes: u64,
}

/// Enumerates the non-degenerate YBE solutions on `n` elements matching
/// the filter. `n = 0` yields nothing.
pub fn enumerate_solutions(n: usize, opts: &EnumOptions) -> EnumOutcome {
    if n == 0 {
        return EnumOutcome { solutions: Vec::new(), complete: true, nodes: 0 };
    }
    let perms: Vec<Vec<usize>> = Perm::all(n).into_iter().map(Perm::into_images).collect();
    let branches: Vec<usize> = (0..perms.len()).collect();
    let run_branch = |&first: &usize| -> (Vec<FiniteSolution>, bool, u64) {
        let mut search = Search::new(n, &perms, opts);
        search.alpha_rows.push(first);
        search.assign_alpha(1);
        (search.out, !(search.stopped || search.limited), search.nodes)
    };
    let results: Vec<(Vec<FiniteSolution>, bool, u64)> = if opts.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .expect("thread pool");
        pool.install(|| branches.par_iter().map(run_branch).collect())
    } else {
        branches.iter().map(run_branch).collect()
    };
    let mut out = EnumOutcome { solutions: Vec::new(), complete: true, nodes: 0 };
    for (solutions, complete, nodes) in results {
        out.solutions.extend(solutions);
        out.complete &= complete;
        out.nodes += nodes;
    }
    if let Some(limit) = opts.limit {
        if out.solutions.len() > limit {
            out.solutions.truncate(limit);
        }
    }
    out
}

struct Search<'a> {
    n: usize,
    perms: &'a [Vec<usize>],
    filter: SolutionFilter,
    budget: Option<u64>,
    limit: Option<usize>,
    nodes: u64,
    stopped: bool,
    limited: bool,
    alpha_rows: Vec<usize>,
    beta_rows: Vec<usize>,
    out: Vec<FiniteSolution>,
}

impl<'a> Search<'a> {
    fn new(n: usize, perms: &'a [Vec<usize>], opts: &EnumOptions) -> Self {
        Search {
            n,
            perms,
            filter: opts.filter,
            budget: opts.budget,
            limit: opts.limit,
            nodes: 0,
            stopped: false,
            limited: false,
            alpha_rows: Vec::with_capacity(n),
            beta_rows: Vec::with_capacity(n),
            out: Vec::new(),
        }
    }

    fn spend_node(&mut self) -> bool {
        self.nodes += 1;
        if let Some(b) = self.budget {
            if self.nodes > b {
                self.stopped = true;
            }
        }
        !self.stopped
    }

    fn done(&mut self) -> bool {
        if self.limit.is_some_and(|l| self.out.len() >= l) {
            self.limited = true;
        }
        self.stopped || self.limited
    }

    fn assign_alpha(&mut self, depth: usize) {
        if self.done() {
            return;
        }
        if depth == self.n {
            self.alpha_complete();
            return;
        }
        for idx in 0..self.perms.len() {
            if !self.spend_node() || self.done() {
                return;
            }
            self.alpha_rows.push(idx);
            self.assign_alpha(depth + 1);
            self.alpha_rows.pop();
            if self.done() {
                return;
            }
        }
    }

    fn alpha_table(&self) -> Vec<Vec<usize>> {
        self.alpha_rows.iter().map(|&i| self.perms[i].clone()).collect()
    }

    fn alpha_complete(&mut self) {
        match self.filter {
            SolutionFilter::All => self.search_beta(),
            SolutionFilter::Involutive | SolutionFilter::Symmetric => self.forced_beta(),
        }
    }

    /// Involutive solutions satisfy `α_{α_x(y)}(β_y(x)) = x`, so beta is
    /// determined by alpha; one full check decides the family.
    fn forced_beta(&mut self) {
        if !self.spend_node() {
            return;
        }
        let alpha = self.alpha_table();
        let n = self.n;
        let inv: Vec<Vec<usize>> = (0..n)
            .map(|x| {
                let mut v = vec![0; n];
                for y in 0..n {
                    v[alpha[x][y]] = y;
                }
                v
            })
            .collect();
        let mut beta = vec![vec![0; n]; n];
        for y in 0..n {
            for x in 0..n {
                beta[y][x] = inv[alpha[x][y]][x];
            }
        }
        let s = FiniteSolution::from_tables_unchecked(alpha, beta);
        let report = s.check_ybe(crate::solution::CheckMethod::Braid);
        if report.is_symmetric {
            self.out.push(s);
        }
    }

    /// Full search: condition (i) pins candidate rows for each beta
    /// entry; rows are then backtracked with partial condition-(ii)
    /// checks and a complete verification at the leaves.
    fn search_beta(&mut self) {
        let n = self.n;
        let alpha = self.alpha_table();
        // needed[x][y] = α_{α_x(y)}⁻¹ ∘ α_x ∘ α_y; β_y(x) may only point
        // at rows whose permutation equals it.
        let mut allowed = vec![vec![Vec::new(); n]; n]; // [y][x] -> rows
        for x in 0..n {
            for y in 0..n {
                let head = &alpha[alpha[x][y]];
                let mut head_inv = vec![0; n];
                for (i, &v) in head.iter().enumerate() {
                    head_inv[v] = i;
                }
                let needed: Vec<usize> = (0..n).map(|z| head_inv[alpha[x][alpha[y][z]]]).collect();
                let rows: Vec<usize> = (0..n).filter(|&k| alpha[k] == needed).collect();
                if rows.is_empty() {
                    return;
                }
                allowed[y][x] = rows;
            }
        }
        self.with_alpha_search_beta(&alpha, &allowed, 0);
    }

    fn with_alpha_search_beta(
        &mut self,
        alpha: &[Vec<usize>],
        allowed: &[Vec<Vec<usize>>],
        y: usize,
    ) {
        if self.done() {
            return;
        }
        let n = self.n;
        if y == n {
            let beta: Vec<Vec<usize>> =
                self.beta_rows.iter().map(|&i| self.perms[i].clone()).collect();
            let s = FiniteSolution::from_tables_unchecked(alpha.to_vec(), beta);
            let report = s.check_ybe(crate::solution::CheckMethod::Braid);
            if report.is_ybe && report.is_valid() {
                self.out.push(s);
            }
            return;
        }
        'rows: for idx in 0..self.perms.len() {
            if !self.spend_node() || self.done() {
                return;
            }
            let row = &self.perms[idx];
            for x in 0..n {
                if !allowed[y][x].contains(&row[x]) {
                    continue 'rows;
                }
            }
            self.beta_rows.push(idx);
            if self.partial_condition_two_holds(alpha, y) {
                self.with_alpha_search_beta(alpha, allowed, y + 1);
            }
            self.beta_rows.pop();
            if self.done() {
                return;
            }
        }
    }

    /// Checks every instance of condition (ii) whose four rows are all
    /// assigned, i.e. indices ≤ `last`.
    fn partial_condition_two_holds(&self, alpha: &[Vec<usize>], last: usize) -> bool {
        let n = self.n;
        let beta = |y: usize| &self.perms[self.beta_rows[y]];
        for x in 0..=last {
            for y in 0..=last {
                let bxy = beta(y)[x];
                let axy = alpha[x][y];
                if bxy > last || axy > last {
                    continue;
                }
                for z in 0..n {
                    if beta(y)[beta(x)[z]] != beta(bxy)[beta(axy)[z]] {
                        return false;
                    }
                }
            }
        }
        true
    }
}
