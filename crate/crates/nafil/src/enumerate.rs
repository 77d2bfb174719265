//! Pruned backtracking enumeration of reduced Latin squares that are
//! invertible loops, with optional identity constraints and a
//! non-associativity filter.
//!
//! Row 1 and column 1 are pinned to the identity, so the search runs over
//! the (n-1)^2 remaining cells in row-major order with ascending candidate
//! values, giving a deterministic single-threaded visit order. Row and
//! column bitmasks keep placements Latin. Invertibility is not a
//! post-filter: a table is invertible exactly when its 1-entries are placed
//! symmetrically, so placing 1 at (i, j) immediately forces (j, i) = 1 and
//! prunes everything violating that. Constraint identities are enforced
//! incrementally: every ground instance watches the first empty cell its
//! evaluation hits, is re-evaluated when that cell fills, and backtracks
//! the search the moment a fully determined instance fails.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::identity::{Identity, Term, MAX_CONSTRAINT_VARS};
use crate::iso::{canonical_form, IsoClass};
use crate::table::LoopTable;

/// What to enumerate: the order, the invertibility and non-associativity
/// filters (both on for a NAFIL search), and identity constraints to
/// enforce during the search.
#[derive(Debug, Clone)]
pub struct EnumerationSpec {
    pub order: usize,
    pub invertible: bool,
    pub nonassociative: bool,
    pub constraints: Vec<Identity>,
}

impl EnumerationSpec {
    /// Search for non-associative invertible loops of the given order.
    pub fn nafil(order: usize) -> Self {
        EnumerationSpec {
            order,
            invertible: true,
            nonassociative: true,
            constraints: Vec::new(),
        }
    }

    /// Visit every reduced Latin square of the given order (all loops).
    pub fn all_loops(order: usize) -> Self {
        EnumerationSpec {
            order,
            invertible: false,
            nonassociative: false,
            constraints: Vec::new(),
        }
    }

    pub fn with_constraint(mut self, id: Identity) -> Self {
        self.constraints.push(id);
        self
    }

    fn validate(&self) -> Result<()> {
        if self.order == 0 {
            return Err(Error::BadDimensions {
                n: 0,
                rows: 0,
                cols: 0,
            });
        }
        for id in &self.constraints {
            if id.vars().len() > MAX_CONSTRAINT_VARS {
                return Err(Error::TooManyVariables {
                    count: id.vars().len(),
                    limit: MAX_CONSTRAINT_VARS,
                });
            }
            if id.uses_inverse() && !self.invertible {
                return Err(Error::InverseUnavailable);
            }
        }
        Ok(())
    }
}

/// Continue or stop an enumeration from the visit callback.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flow {
    Continue,
    Stop,
}

const PASSED: u32 = u32::MAX;

/// One ground instance of a constraint identity: which identity, and the
/// element assigned to each of its variables.
#[derive(Clone, Copy)]
struct Instance {
    ident: u16,
    env: [u8; MAX_CONSTRAINT_VARS],
}

enum PartialEval {
    Val(u8),
    Blocked(usize),
}

enum InstanceState {
    Passed,
    Failed,
    Blocked(usize),
}

/// Watch lists mapping cells to the constraint instances blocked on them.
///
/// Entries are removed lazily: an entry is live only while `blocked_on`
/// still names that cell, so stale copies left behind by backtracking are
/// skipped and dropped on the next drain.
struct Watch {
    n: usize,
    idents: Vec<Identity>,
    instances: Vec<Instance>,
    blocked_on: Vec<u32>,
    watchers: Vec<Vec<u32>>,
    trail: Vec<(u32, u32)>,
    marks: Vec<usize>,
}

fn peval(term: &Term, vars: &[char], env: &[u8], grid: &[u8], n: usize) -> PartialEval {
    match term {
        Term::Var(c) => {
            let i = vars.iter().position(|v| v == c).unwrap();
            PartialEval::Val(env[i])
        }
        Term::Ident => PartialEval::Val(1),
        Term::Inv(x) => {
            let v = match peval(x, vars, env, grid, n) {
                PartialEval::Val(v) => v as usize,
                blocked => return blocked,
            };
            if v == 1 {
                return PartialEval::Val(1);
            }
            // The inverse of v is the column holding 1 in row v. While that
            // 1 is unplaced, watch the first empty cell of the row; every
            // cell fills eventually, so the instance is re-examined no
            // later than the row's completion.
            let row = &grid[(v - 1) * n..v * n];
            let mut first_empty = None;
            for (c, &g) in row.iter().enumerate() {
                if g == 1 {
                    return PartialEval::Val(c as u8 + 1);
                }
                if g == 0 && first_empty.is_none() {
                    first_empty = Some((v - 1) * n + c);
                }
            }
            PartialEval::Blocked(first_empty.expect("complete row always contains a 1"))
        }
        Term::Mul(a, b) => {
            let x = match peval(a, vars, env, grid, n) {
                PartialEval::Val(v) => v,
                blocked => return blocked,
            };
            let y = match peval(b, vars, env, grid, n) {
                PartialEval::Val(v) => v,
                blocked => return blocked,
            };
            let idx = (x as usize - 1) * n + (y as usize - 1);
            match grid[idx] {
                0 => PartialEval::Blocked(idx),
                v => PartialEval::Val(v),
            }
        }
    }
}

impl Watch {
    /// Builds the instance set and evaluates everything against `grid`.
    /// Returns `None` when some fully determined instance already fails.
    fn init(idents: &[Identity], n: usize, grid: &[u8]) -> Option<Watch> {
        let mut watch = Watch {
            n,
            idents: idents.to_vec(),
            instances: Vec::new(),
            blocked_on: Vec::new(),
            watchers: vec![Vec::new(); n * n],
            trail: Vec::new(),
            marks: Vec::new(),
        };
        for (ii, id) in idents.iter().enumerate() {
            let k = id.vars().len();
            let mut env = [1u8; MAX_CONSTRAINT_VARS];
            loop {
                let inst = Instance {
                    ident: ii as u16,
                    env,
                };
                let idx = watch.instances.len() as u32;
                watch.instances.push(inst);
                watch.blocked_on.push(PASSED);
                match watch.eval_instance(idx, grid) {
                    InstanceState::Passed => {}
                    InstanceState::Failed => return None,
                    InstanceState::Blocked(c) => {
                        watch.blocked_on[idx as usize] = c as u32;
                        watch.watchers[c].push(idx);
                    }
                }
                // odometer over env[..k]
                let mut i = k;
                let done = loop {
                    if i == 0 {
                        break true;
                    }
                    i -= 1;
                    if env[i] < n as u8 {
                        env[i] += 1;
                        break false;
                    }
                    env[i] = 1;
                };
                if done {
                    break;
                }
            }
        }
        Some(watch)
    }

    fn eval_instance(&self, idx: u32, grid: &[u8]) -> InstanceState {
        let inst = &self.instances[idx as usize];
        let id = &self.idents[inst.ident as usize];
        let lhs = match peval(id.lhs(), id.vars(), &inst.env, grid, self.n) {
            PartialEval::Val(v) => v,
            PartialEval::Blocked(c) => return InstanceState::Blocked(c),
        };
        let rhs = match peval(id.rhs(), id.vars(), &inst.env, grid, self.n) {
            PartialEval::Val(v) => v,
            PartialEval::Blocked(c) => return InstanceState::Blocked(c),
        };
        if lhs == rhs {
            InstanceState::Passed
        } else {
            InstanceState::Failed
        }
    }

    /// Wakes every instance blocked on `cell` after it was filled. On a
    /// constraint violation the internal state is rolled back and `false`
    /// is returned; otherwise one undo mark is pushed.
    fn on_place(&mut self, cell: usize, grid: &[u8]) -> bool {
        let mark = self.trail.len();
        let woken = std::mem::take(&mut self.watchers[cell]);
        for (i, &id) in woken.iter().enumerate() {
            if self.blocked_on[id as usize] != cell as u32 {
                continue; // stale entry
            }
            match self.eval_instance(id, grid) {
                InstanceState::Passed => {
                    self.trail.push((id, cell as u32));
                    self.blocked_on[id as usize] = PASSED;
                }
                InstanceState::Blocked(c2) => {
                    debug_assert_ne!(c2, cell);
                    self.trail.push((id, cell as u32));
                    self.blocked_on[id as usize] = c2 as u32;
                    self.watchers[c2].push(id);
                }
                InstanceState::Failed => {
                    // Put the unprocessed tail (and the failing instance)
                    // back, then undo the moves made in this call.
                    self.watchers[cell].extend_from_slice(&woken[i..]);
                    while self.trail.len() > mark {
                        let (id, prev) = self.trail.pop().unwrap();
                        self.blocked_on[id as usize] = prev;
                        self.watchers[prev as usize].push(id);
                    }
                    return false;
                }
            }
        }
        self.marks.push(mark);
        true
    }

    fn undo(&mut self) {
        let mark = self.marks.pop().expect("unbalanced watch undo");
        while self.trail.len() > mark {
            let (id, prev) = self.trail.pop().unwrap();
            self.blocked_on[id as usize] = prev;
            self.watchers[prev as usize].push(id);
        }
    }
}

struct Search<'a> {
    spec: &'a EnumerationSpec,
    n: usize,
    grid: Vec<u8>,
    row_mask: Vec<u64>,
    col_mask: Vec<u64>,
    /// Free cells (rows 2..=n, columns 2..=n) as flat indices, row-major.
    cells: Vec<usize>,
    watch: Option<Watch>,
    unsat: bool,
}

impl<'a> Search<'a> {
    fn new(spec: &'a EnumerationSpec) -> Search<'a> {
        let n = spec.order;
        let mut grid = vec![0u8; n * n];
        for k in 0..n {
            grid[k] = k as u8 + 1;
            grid[k * n] = k as u8 + 1;
        }
        Self::resume(spec, grid)
    }

    /// Rebuilds masks and watch state from a partially filled grid.
    fn resume(spec: &'a EnumerationSpec, grid: Vec<u8>) -> Search<'a> {
        let n = spec.order;
        let mut row_mask = vec![0u64; n];
        let mut col_mask = vec![0u64; n];
        for r in 0..n {
            for c in 0..n {
                let v = grid[r * n + c];
                if v != 0 {
                    row_mask[r] |= 1 << v;
                    col_mask[c] |= 1 << v;
                }
            }
        }
        let cells = (1..n)
            .flat_map(|r| (1..n).map(move |c| r * n + c))
            .collect();
        let (watch, unsat) = if spec.constraints.is_empty() {
            (None, false)
        } else {
            match Watch::init(&spec.constraints, n, &grid) {
                Some(w) => (Some(w), false),
                None => (None, true),
            }
        };
        Search {
            spec,
            n,
            grid,
            row_mask,
            col_mask,
            cells,
            watch,
            unsat,
        }
    }

    fn place(&mut self, idx: usize, v: u8) -> bool {
        self.grid[idx] = v;
        self.row_mask[idx / self.n] |= 1 << v;
        self.col_mask[idx % self.n] |= 1 << v;
        if let Some(w) = self.watch.as_mut() {
            if !w.on_place(idx, &self.grid) {
                self.grid[idx] = 0;
                self.row_mask[idx / self.n] &= !(1 << v);
                self.col_mask[idx % self.n] &= !(1 << v);
                return false;
            }
        }
        true
    }

    fn unplace(&mut self, idx: usize) {
        if let Some(w) = self.watch.as_mut() {
            w.undo();
        }
        let v = self.grid[idx];
        self.grid[idx] = 0;
        self.row_mask[idx / self.n] &= !(1 << v);
        self.col_mask[idx % self.n] &= !(1 << v);
    }

    fn grid_is_associative(&self) -> bool {
        let n = self.n;
        let get = |x: u8, y: u8| self.grid[(x as usize - 1) * n + (y as usize - 1)];
        for a in 1..=n as u8 {
            for b in 1..=n as u8 {
                let ab = get(a, b);
                for c in 1..=n as u8 {
                    if get(ab, c) != get(a, get(b, c)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `limit` bounds how much of the cell list this walk fills; a full run
    /// passes `cells.len()` and reports leaves to `on_leaf`.
    fn dfs(&mut self, mut pos: usize, limit: usize, on_leaf: &mut dyn FnMut(&mut Search) -> Flow) -> Flow {
        while pos < limit && self.grid[self.cells[pos]] != 0 {
            pos += 1;
        }
        if pos == limit {
            return on_leaf(self);
        }
        let idx = self.cells[pos];
        let (r, c) = (idx / self.n, idx % self.n);
        let free = !(self.row_mask[r] | self.col_mask[c]);
        for v in 1..=self.n as u8 {
            if free & (1 << v) == 0 {
                continue;
            }
            let mut placements = 0;
            if self.spec.invertible && v == 1 && r != c {
                let mirror = c * self.n + r;
                if self.grid[mirror] != 0 {
                    // The mirror holds a non-1 value: placing 1 here would
                    // give this element one-sided inverses only.
                    debug_assert_ne!(self.grid[mirror], 1);
                    continue;
                }
                if (self.row_mask[c] | self.col_mask[r]) & (1 << 1) != 0 {
                    continue;
                }
                if !self.place(idx, 1) {
                    continue;
                }
                placements += 1;
                if !self.place(mirror, 1) {
                    self.unplace(idx);
                    continue;
                }
                placements += 1;
            } else {
                if !self.place(idx, v) {
                    continue;
                }
                placements += 1;
            }
            let flow = self.dfs(pos + 1, limit, on_leaf);
            if placements == 2 {
                self.unplace(c * self.n + r);
            }
            self.unplace(idx);
            if flow == Flow::Stop {
                return Flow::Stop;
            }
        }
        Flow::Continue
    }

    fn run(&mut self, visit: &mut dyn FnMut(&LoopTable) -> Flow) -> u64 {
        if self.unsat {
            return 0;
        }
        let mut count = 0u64;
        let limit = self.cells.len();
        let nonassoc = self.spec.nonassociative;
        self.dfs(0, limit, &mut |search| {
            if nonassoc && search.grid_is_associative() {
                return Flow::Continue;
            }
            count += 1;
            let t = LoopTable::from_valid_cells(search.n, search.grid.clone());
            visit(&t)
        });
        count
    }
}

/// Visits every reduced table of `spec.order` satisfying the spec's
/// filters and constraints, in deterministic row-major order, and returns
/// how many were visited. The callback may stop the search early.
pub fn enumerate_loops<F>(spec: &EnumerationSpec, mut visit: F) -> Result<u64>
where
    F: FnMut(&LoopTable) -> Flow,
{
    spec.validate()?;
    let mut search = Search::new(spec);
    Ok(search.run(&mut visit))
}

/// Grids with row 2 fully decided, each the root of an independent subtree.
fn row_two_prefixes(spec: &EnumerationSpec) -> Vec<Vec<u8>> {
    let mut search = Search::new(spec);
    if search.unsat {
        return Vec::new();
    }
    let mut prefixes = Vec::new();
    let limit = spec.order.saturating_sub(1); // free cells of row 2
    search.dfs(0, limit, &mut |s| {
        prefixes.push(s.grid.clone());
        Flow::Continue
    });
    prefixes
}

/// Multi-threaded [`enumerate_loops`]: the tree is split at row 2 into
/// independent subtree tasks. Visit order across subtrees is unspecified;
/// the visited multiset equals the serial run's.
pub fn enumerate_loops_parallel<F>(spec: &EnumerationSpec, threads: usize, visit: F) -> Result<u64>
where
    F: Fn(&LoopTable) + Sync,
{
    spec.validate()?;
    if threads <= 1 || spec.order <= 2 {
        let mut search = Search::new(spec);
        return Ok(search.run(&mut |t| {
            visit(t);
            Flow::Continue
        }));
    }
    let prefixes = row_two_prefixes(spec);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("building a rayon pool cannot fail with default stack sizes");
    let total = pool.install(|| {
        use rayon::prelude::*;
        prefixes
            .par_iter()
            .map(|grid| {
                let mut search = Search::resume(spec, grid.clone());
                search.run(&mut |t| {
                    visit(t);
                    Flow::Continue
                })
            })
            .sum()
    });
    Ok(total)
}

/// First non-associative invertible loop of the given order found by the
/// search; errors with `NotFound` when none exists (orders below 5).
pub fn verify_existence(order: usize) -> Result<LoopTable> {
    let spec = EnumerationSpec::nafil(order);
    let mut witness = None;
    enumerate_loops(&spec, |t| {
        witness = Some(t.clone());
        Flow::Stop
    })?;
    witness.ok_or(Error::NotFound { order })
}

/// Orders above this require an explicit opt-in to long runs.
pub const FREE_ORDER_CEILING: usize = 6;

/// Refuses long searches (order 7 and up) unless the caller opted in.
pub fn check_budget(what: &'static str, order: usize, allow_long: bool) -> Result<()> {
    if order > FREE_ORDER_CEILING && !allow_long {
        return Err(Error::CeilingExceeded {
            what,
            requested: order,
            ceiling: FREE_ORDER_CEILING,
            gated: true,
        });
    }
    Ok(())
}

/// Enumeration plus isomorphism classification.
#[derive(Debug, Clone)]
pub struct Census {
    pub order: usize,
    /// Reduced tables visited (after all filters).
    pub reduced_count: u64,
    /// One class per canonical form, sorted by canonical encoding.
    pub classes: Vec<IsoClass>,
}

/// Runs the enumeration and classifies every visited table by canonical
/// form. `on_progress` is called with the running table count.
pub fn census_observed(
    spec: &EnumerationSpec,
    threads: usize,
    allow_long: bool,
    on_progress: &(dyn Fn(u64) + Sync),
) -> Result<Census> {
    check_budget("census", spec.order, allow_long)?;
    spec.validate()?;
    let classes: Mutex<HashMap<Vec<u8>, IsoClass>> = Mutex::new(HashMap::new());
    let counter = AtomicU64::new(0);
    let record = |t: &LoopTable| {
        let canon = canonical_form(t).expect("enumerated tables are normal");
        let mut map = classes.lock().unwrap();
        map.entry(canon.cells().to_vec())
            .or_insert_with(|| IsoClass {
                canonical: canon,
                members_seen: 0,
            })
            .members_seen += 1;
        drop(map);
        on_progress(counter.fetch_add(1, Ordering::Relaxed) + 1);
    };
    let reduced_count = if threads <= 1 {
        enumerate_loops(spec, |t| {
            record(t);
            Flow::Continue
        })?
    } else {
        enumerate_loops_parallel(spec, threads, record)?
    };
    let mut classes: Vec<IsoClass> = classes.into_inner().unwrap().into_values().collect();
    classes.sort_by(|a, b| a.canonical.cells().cmp(b.canonical.cells()));
    Ok(Census {
        order: spec.order,
        reduced_count,
        classes,
    })
}

/// [`census_observed`] without progress reporting.
pub fn census(spec: &EnumerationSpec, threads: usize, allow_long: bool) -> Result<Census> {
    census_observed(spec, threads, allow_long, &|_| {})
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identity::{check_identity, Identity};
    use crate::iso::are_isomorphic;
    use std::collections::HashSet;

    #[test]
    fn reduced_latin_square_counts_match_known_values() {
        // Reduced Latin squares of orders 1..=5: 1, 1, 1, 4, 56.
        for (n, expected) in [(1, 1), (2, 1), (3, 1), (4, 4), (5, 56)] {
            let spec = EnumerationSpec::all_loops(n);
            let count = enumerate_loops(&spec, |_| Flow::Continue).unwrap();
            assert_eq!(count, expected, "order {n}");
        }
    }

    #[test]
    fn trivial_order_one_behaviour() {
        let mut spec = EnumerationSpec::nafil(1);
        assert_eq!(enumerate_loops(&spec, |_| Flow::Continue).unwrap(), 0);
        spec.nonassociative = false;
        assert_eq!(enumerate_loops(&spec, |_| Flow::Continue).unwrap(), 1);
    }

    #[test]
    fn no_nafil_below_order_five() {
        for n in 1..=4 {
            let spec = EnumerationSpec::nafil(n);
            assert_eq!(enumerate_loops(&spec, |_| Flow::Continue).unwrap(), 0, "order {n}");
        }
    }

    #[test]
    fn every_visited_table_is_valid_normal_and_invertible() {
        let spec = EnumerationSpec::nafil(5);
        let mut seen = HashSet::new();
        let count = enumerate_loops(&spec, |t| {
            assert!(t.is_normal());
            let rows: Vec<Vec<u8>> = t.rows().map(|r| r.to_vec()).collect();
            assert_eq!(&LoopTable::build(5, &rows).unwrap(), t);
            let profile = t.axiom_profile();
            assert!(profile.invertible);
            assert!(!profile.associative);
            assert!(seen.insert(t.cells().to_vec()), "duplicate table");
            Flow::Continue
        })
        .unwrap();
        assert_eq!(count as usize, seen.len());
        assert!(count > 0);
    }

    #[test]
    fn order_five_nafils_form_one_class() {
        let census = census(&EnumerationSpec::nafil(5), 1, false).unwrap();
        assert_eq!(census.classes.len(), 1);
        let l5 = crate::catalog::builtin("L5").unwrap();
        assert!(are_isomorphic(&census.classes[0].canonical, &l5)
            .unwrap()
            .is_some());
    }

    #[test]
    fn existence_witness_at_order_five_is_l5() {
        let w = verify_existence(5).unwrap();
        let l5 = crate::catalog::builtin("L5").unwrap();
        assert!(are_isomorphic(&w, &l5).unwrap().is_some());
        assert_eq!(verify_existence(4).unwrap_err(), Error::NotFound { order: 4 });
    }

    #[test]
    fn constraint_pruning_equals_post_filtering() {
        // Prune-during vs filter-after must agree, with and without
        // inverses in the constraint.
        for (n, text) in [(5, "x*(y*x) = (x*y)*x"), (5, "(x*y)*x' = y"), (4, "x*y = y*x")] {
            let id = Identity::parse(text).unwrap();
            let mut all = Vec::new();
            let mut spec = EnumerationSpec::nafil(n);
            spec.nonassociative = false;
            enumerate_loops(&spec, |t| {
                all.push(t.clone());
                Flow::Continue
            })
            .unwrap();
            let filtered: Vec<Vec<u8>> = all
                .iter()
                .filter(|t| check_identity(t, &id).unwrap().holds())
                .map(|t| t.cells().to_vec())
                .collect();

            let mut pruned = Vec::new();
            let cspec = spec.clone().with_constraint(id);
            enumerate_loops(&cspec, |t| {
                pruned.push(t.cells().to_vec());
                Flow::Continue
            })
            .unwrap();
            assert_eq!(pruned, filtered, "constraint `{text}` at order {n}");
        }
    }

    #[test]
    fn inverse_constraints_require_invertible_search() {
        let id = Identity::parse("(x*y)*x' = y").unwrap();
        let spec = EnumerationSpec::all_loops(5).with_constraint(id);
        assert_eq!(
            enumerate_loops(&spec, |_| Flow::Continue).unwrap_err(),
            Error::InverseUnavailable
        );
    }

    #[test]
    fn constraint_variable_cap() {
        let id = Identity::parse("(x*y)*(z*w) = x*(y*(z*w))").unwrap();
        let spec = EnumerationSpec::nafil(5).with_constraint(id);
        assert_eq!(
            enumerate_loops(&spec, |_| Flow::Continue).unwrap_err(),
            Error::TooManyVariables { count: 4, limit: 3 }
        );
    }

    #[test]
    fn unsatisfiable_constraint_yields_zero_not_error() {
        let id = Identity::parse("x = y").unwrap();
        let spec = EnumerationSpec::all_loops(3).with_constraint(id);
        assert_eq!(enumerate_loops(&spec, |_| Flow::Continue).unwrap(), 0);
    }

    #[test]
    fn parallel_and_serial_runs_agree() {
        let spec = EnumerationSpec::nafil(5);
        let serial = census(&spec, 1, false).unwrap();
        let parallel = census(&spec, 4, false).unwrap();
        assert_eq!(serial.reduced_count, parallel.reduced_count);
        assert_eq!(serial.classes.len(), parallel.classes.len());
        for (a, b) in serial.classes.iter().zip(parallel.classes.iter()) {
            assert_eq!(a.canonical, b.canonical);
            assert_eq!(a.members_seen, b.members_seen);
        }
    }

    #[test]
    fn census_budget_gate() {
        let spec = EnumerationSpec::nafil(7);
        let err = census(&spec, 1, false).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        assert!(matches!(err, Error::CeilingExceeded { gated: true, .. }));
    }

    #[test]
    fn visited_invertible_tables_have_two_sided_inverses() {
        let mut spec = EnumerationSpec::nafil(6);
        spec.nonassociative = false;
        let mut checked = 0;
        enumerate_loops(&spec, |t| {
            assert!(t.inverse_maps().unwrap().is_invertible());
            checked += 1;
            if checked >= 500 {
                Flow::Stop
            } else {
                Flow::Continue
            }
        })
        .unwrap();
        assert!(checked > 0);
    }
}
