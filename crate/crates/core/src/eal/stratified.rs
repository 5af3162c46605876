//! Depth-stratified normalization of box terms. All redexes at depth `d`
//! are contracted before any at depth `d + 1`; a redex is either a
//! β-redex or a box sitting in a door of another box at the same depth,
//! which is merged into it.

use std::fmt;

use super::boxes::BoxTerm;
use crate::proj::PureTerm;

/// Internal representation: variables bound by λ are de Bruijn indices
/// local to their box region, and `Door(i)` names door `i` of the nearest
/// enclosing box.
#[derive(Clone, Debug)]
enum Node {
    Var(usize),
    Free(String),
    Door(usize),
    Lam(String, Box<Node>),
    App(Box<Node>, Box<Node>),
    Boxed(Box<Node>, Vec<Node>),
}

impl Node {
    fn from_box_term(t: &BoxTerm) -> Node {
        fn go(t: &BoxTerm, lams: &mut Vec<String>, doors: &[String]) -> Node {
            match t {
                BoxTerm::Var(x) => {
                    if let Some(i) = lams.iter().rev().position(|y| y == x) {
                        Node::Var(i)
                    } else if let Some(j) = doors.iter().rposition(|y| y == x) {
                        Node::Door(j)
                    } else {
                        Node::Free(x.clone())
                    }
                }
                BoxTerm::Lam(x, b) => {
                    lams.push(x.clone());
                    let body = go(b, lams, doors);
                    lams.pop();
                    Node::Lam(x.clone(), Box::new(body))
                }
                BoxTerm::App(f, a) => Node::App(Box::new(go(f, lams, doors)), Box::new(go(a, lams, doors))),
                BoxTerm::Box(body, ds) => {
                    let values = ds.iter().map(|(_, u)| go(u, lams, doors)).collect();
                    let names: Vec<String> = ds.iter().map(|(x, _)| x.clone()).collect();
                    Node::Boxed(Box::new(go(body, &mut Vec::new(), &names)), values)
                }
            }
        }
        go(t, &mut Vec::new(), &[])
    }

    fn erase(&self) -> PureTerm {
        fn go(t: &Node, doors: &[PureTerm], k: usize) -> PureTerm {
            match t {
                Node::Var(i) => PureTerm::Var(*i),
                Node::Free(x) => PureTerm::free(x.clone()),
                Node::Door(i) => doors[*i].shift(k as isize, 0),
                Node::Lam(h, b) => PureTerm::lam(h.clone(), go(b, doors, k + 1)),
                Node::App(f, a) => PureTerm::app(go(f, doors, k), go(a, doors, k)),
                Node::Boxed(body, ds) => {
                    let values: Vec<PureTerm> = ds.iter().map(|d| go(d, doors, k)).collect();
                    go(body, &values, 0)
                }
            }
        }
        go(self, &[], 0)
    }

    fn size(&self) -> usize {
        match self {
            Node::Var(_) | Node::Free(_) | Node::Door(_) => 1,
            Node::Lam(_, b) => 1 + b.size(),
            Node::App(f, a) => 1 + f.size() + a.size(),
            Node::Boxed(b, ds) => 1 + b.size() + ds.iter().map(Node::size).sum::<usize>(),
        }
    }

    fn depth(&self) -> usize {
        match self {
            Node::Var(_) | Node::Free(_) | Node::Door(_) => 0,
            Node::Lam(_, b) => b.depth(),
            Node::App(f, a) => f.depth().max(a.depth()),
            Node::Boxed(b, ds) => ds.iter().map(Node::depth).max().unwrap_or(0).max(1 + b.depth()),
        }
    }

    /// Shifts free λ-indices of this region by `d` at or above `cutoff`.
    fn shift(&self, d: usize, cutoff: usize) -> Node {
        match self {
            Node::Var(i) if *i >= cutoff => Node::Var(i + d),
            Node::Var(_) | Node::Free(_) | Node::Door(_) => self.clone(),
            Node::Lam(h, b) => Node::Lam(h.clone(), Box::new(b.shift(d, cutoff + 1))),
            Node::App(f, a) => Node::App(Box::new(f.shift(d, cutoff)), Box::new(a.shift(d, cutoff))),
            Node::Boxed(b, ds) => Node::Boxed(b.clone(), ds.iter().map(|x| x.shift(d, cutoff)).collect()),
        }
    }

    /// `self[arg/depth]` removing that binder, within this region; counts
    /// the occurrences replaced.
    fn instantiate(&mut self, arg: &Node, depth: usize, uses: &mut usize) {
        match self {
            Node::Var(i) if *i == depth => {
                *uses += 1;
                *self = arg.shift(depth, 0);
            }
            Node::Var(i) if *i > depth => *i -= 1,
            Node::Var(_) | Node::Free(_) | Node::Door(_) => {}
            Node::Lam(_, b) => b.instantiate(arg, depth + 1, uses),
            Node::App(f, a) => {
                f.instantiate(arg, depth, uses);
                a.instantiate(arg, depth, uses);
            }
            Node::Boxed(_, ds) => ds.iter_mut().for_each(|x| x.instantiate(arg, depth, uses)),
        }
    }

    /// Replaces each door referenced from this region.
    fn map_doors(&mut self, f: &mut impl FnMut(usize) -> Node) {
        match self {
            Node::Door(i) => *self = f(*i),
            Node::Var(_) | Node::Free(_) => {}
            Node::Lam(_, b) => b.map_doors(f),
            Node::App(g, a) => {
                g.map_doors(f);
                a.map_doors(f);
            }
            Node::Boxed(_, ds) => ds.iter_mut().for_each(|x| x.map_doors(f)),
        }
    }
}

/// Merges every box sitting in a door of the box `(body, doors)`: each use
/// of such a door receives its own copy of the inner body and of its
/// doors. Returns the merged box, the number of doors kept in front, and
/// the size change of each merge taken in door order.
fn merge_all(mut body: Node, doors: Vec<Node>) -> (Node, usize, Vec<isize>) {
    let mut kept = Vec::new();
    let mut new_index = Vec::with_capacity(doors.len());
    let mut inners = Vec::with_capacity(doors.len());
    for d in doors {
        match d {
            Node::Boxed(inner, inner_doors) => {
                new_index.push(usize::MAX);
                inners.push(Some((*inner, inner_doors)));
            }
            other => {
                new_index.push(kept.len());
                kept.push(other);
                inners.push(None);
            }
        }
    }
    let front = kept.len();
    let mut uses = vec![0isize; inners.len()];
    body.map_doors(&mut |j| match &inners[j] {
        None => Node::Door(new_index[j]),
        Some((inner, inner_doors)) => {
            uses[j] += 1;
            let offset = kept.len();
            kept.extend(inner_doors.iter().cloned());
            let mut copy = inner.clone();
            copy.map_doors(&mut |k| Node::Door(offset + k));
            copy
        }
    });
    let deltas = inners
        .iter()
        .zip(uses)
        .filter_map(|(m, n)| {
            let (inner, inner_doors) = m.as_ref()?;
            let body = inner.size() as isize;
            let doors = inner_doors.iter().map(Node::size).sum::<usize>() as isize;
            Some(n * (body - 1 + doors) - (1 + body + doors))
        })
        .collect();
    (Node::Boxed(Box::new(body), kept), front, deltas)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Step {
    Beta,
    Merge,
}

/// The form a node must take to make its parent a redex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Stop {
    Never,
    /// In function position: a λ makes a β-redex.
    Lam,
    /// In a door: a box is merged.
    Boxed,
}

impl Stop {
    fn reached(self, t: &Node) -> bool {
        match self {
            Stop::Never => false,
            Stop::Lam => matches!(t, Node::Lam(..)),
            Stop::Boxed => matches!(t, Node::Boxed(..)),
        }
    }
}

/// Bookkeeping while reducing one level.
struct Run<'a> {
    fuel: u64,
    spent: u64,
    total_steps: u64,
    size: usize,
    level: &'a mut LevelCost,
}

struct OutOfFuel;

impl Run<'_> {
    fn record(&mut self, step: Step, delta: isize) -> Result<(), OutOfFuel> {
        self.spent += 1;
        if self.spent > self.fuel {
            return Err(OutOfFuel);
        }
        match step {
            Step::Beta => {
                self.level.beta_steps += 1;
                self.total_steps += 1;
            }
            Step::Merge => self.level.merges += 1,
        }
        self.size = self.size.checked_add_signed(delta).expect("sizes stay positive");
        self.level.max_size = self.level.max_size.max(self.size);
        Ok(())
    }
}

/// Contracts every redex at exactly `target` depth below `t`,
/// leftmost-outermost, returning early once `t` takes the form `stop` so
/// that the parent redex is contracted next.
fn reduce_level(t: &mut Node, depth: usize, target: usize, stop: Stop, run: &mut Run) -> Result<(), OutOfFuel> {
    if depth < target {
        match t {
            Node::Var(_) | Node::Free(_) | Node::Door(_) => {}
            Node::Lam(_, b) => reduce_level(b, depth, target, Stop::Never, run)?,
            Node::App(f, a) => {
                reduce_level(f, depth, target, Stop::Never, run)?;
                reduce_level(a, depth, target, Stop::Never, run)?;
            }
            Node::Boxed(b, ds) => {
                for d in ds.iter_mut() {
                    reduce_level(d, depth, target, Stop::Never, run)?;
                }
                reduce_level(b, depth + 1, target, Stop::Never, run)?;
            }
        }
        return Ok(());
    }
    loop {
        match t {
            Node::App(f, a) if matches!(**f, Node::Lam(..)) => {
                let Node::App(f, a) = std::mem::replace(t, Node::Var(0)) else { unreachable!() };
                let Node::Lam(_, mut body) = *f else { unreachable!() };
                let mut uses = 0;
                body.instantiate(&a, 0, &mut uses);
                *t = *body;
                // The application, the λ and the argument go; each use of
                // the variable becomes a copy of the argument.
                let arg = a.size() as isize;
                run.record(Step::Beta, uses as isize * (arg - 1) - 2 - arg)?;
            }
            Node::Var(_) | Node::Free(_) | Node::Door(_) => return Ok(()),
            Node::Lam(_, b) => return reduce_level(b, depth, target, Stop::Never, run),
            Node::App(f, a) => {
                reduce_level(f, depth, target, Stop::Lam, run)?;
                if !matches!(**f, Node::Lam(..)) {
                    return reduce_level(a, depth, target, Stop::Never, run);
                }
            }
            Node::Boxed(..) => return reduce_box(t, depth, target, run),
        }
        if stop.reached(t) {
            return Ok(());
        }
    }
}

/// [`reduce_level`] on a box at the target depth: the doors are reduced
/// left to right, stopping at any that becomes a box, and then all boxes in
/// doors are merged at once; repeated until no door holds a box.
fn reduce_box(t: &mut Node, depth: usize, target: usize, run: &mut Run) -> Result<(), OutOfFuel> {
    // Doors before `next` are normal at this depth and are not boxes.
    let mut next = 0;
    loop {
        let Node::Boxed(_, doors) = t else { unreachable!("a box stays a box") };
        for door in &mut doors[next..] {
            if !matches!(door, Node::Boxed(..)) {
                reduce_level(door, depth, target, Stop::Boxed, run)?;
            }
        }
        if !doors.iter().any(|d| matches!(d, Node::Boxed(..))) {
            return Ok(());
        }
        let Node::Boxed(body, doors) = std::mem::replace(t, Node::Var(0)) else { unreachable!() };
        let (merged, front, deltas) = merge_all(*body, doors);
        *t = merged;
        next = front;
        for delta in deltas {
            run.record(Step::Merge, delta)?;
        }
    }
}

/// Shallowest depth at which a redex remains.
fn shallowest_redex(t: &Node, depth: usize) -> Option<usize> {
    let here = match t {
        Node::App(f, _) if matches!(**f, Node::Lam(..)) => Some(depth),
        Node::Boxed(_, ds) if ds.iter().any(|d| matches!(d, Node::Boxed(..))) => Some(depth),
        _ => None,
    };
    let below = match t {
        Node::Var(_) | Node::Free(_) | Node::Door(_) => None,
        Node::Lam(_, b) => shallowest_redex(b, depth),
        Node::App(f, a) => min_opt(shallowest_redex(f, depth), shallowest_redex(a, depth)),
        Node::Boxed(b, ds) => {
            let doors = ds.iter().filter_map(|d| shallowest_redex(d, depth)).min();
            min_opt(doors, shallowest_redex(b, depth + 1))
        }
    };
    min_opt(here, below)
}

fn min_opt(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Work done at one depth.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LevelCost {
    pub depth: usize,
    pub beta_steps: u64,
    /// Box merges: administrative, not counted as reduction steps.
    pub merges: u64,
    pub start_size: usize,
    pub max_size: usize,
}

impl LevelCost {
    /// Whether the largest size reached stays within `2^start_size`.
    pub fn within_exponential_bound(&self) -> bool {
        self.start_size >= 64 || (self.max_size as u128) <= 1u128 << self.start_size
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CostProfile {
    /// One record per level visited, in increasing depth.
    pub levels: Vec<LevelCost>,
    /// Total β-contractions.
    pub total_steps: u64,
    /// Box depth of the input term.
    pub box_depth: usize,
    /// Times a redex reappeared at a depth already closed.
    pub reopened: u64,
    /// β-steps needed after box erasure (zero when stratification is
    /// complete).
    pub residual_steps: u64,
}

impl CostProfile {
    /// Deepest level at which any work happened.
    pub fn deepest_active_level(&self) -> Option<usize> {
        self.levels.iter().rev().find(|l| l.beta_steps + l.merges > 0).map(|l| l.depth)
    }
}

impl fmt::Display for CostProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.levels {
            writeln!(
                f,
                "depth={} steps={} merges={} start-size={} max-size={}",
                l.depth, l.beta_steps, l.merges, l.start_size, l.max_size
            )?;
        }
        write!(f, "total-steps={} box-depth={}", self.total_steps, self.box_depth)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("fuel exhausted after {fuel} steps")]
pub struct StratifiedFuelExhausted {
    pub fuel: u64,
    pub profile: CostProfile,
}

/// Normalizes level by level within `fuel` contractions (β and merges),
/// then erases the boxes.
pub fn stratified_normalize(t: &BoxTerm, fuel: u64) -> Result<(PureTerm, CostProfile), StratifiedFuelExhausted> {
    let mut node = Node::from_box_term(t);
    let mut profile = CostProfile { box_depth: node.depth(), ..CostProfile::default() };
    let mut spent = 0u64;
    let mut d = 0;
    while d <= node.depth() {
        let size = node.size();
        if profile.levels.len() <= d {
            profile.levels.push(LevelCost { depth: d, start_size: size, max_size: size, ..LevelCost::default() });
        }
        let mut run = Run { fuel, spent, total_steps: profile.total_steps, size, level: &mut profile.levels[d] };
        let outcome = reduce_level(&mut node, 0, d, Stop::Never, &mut run);
        (spent, profile.total_steps) = (run.spent, run.total_steps);
        if outcome.is_err() {
            return Err(StratifiedFuelExhausted { fuel, profile });
        }
        match shallowest_redex(&node, 0) {
            Some(e) if e < d => {
                profile.reopened += 1;
                d = e;
            }
            _ => d += 1,
        }
    }
    let erased = node.erase();
    if erased.is_normal() {
        return Ok((erased, profile));
    }
    match erased.normalize(fuel.saturating_sub(spent)) {
        Ok(nf) => {
            profile.residual_steps = nf.steps;
            Ok((nf.term, profile))
        }
        Err(_) => Err(StratifiedFuelExhausted { fuel, profile }),
    }
}
