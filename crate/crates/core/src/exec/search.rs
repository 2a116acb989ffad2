//! Breadth-first search over bitset states.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};

use crate::model::{GroundTask, Name, Plan, State, Step};

type Bits = Box<[u64]>;

fn empty_bits(words: usize) -> Bits {
    vec![0u64; words].into_boxed_slice()
}

fn set(bits: &mut [u64], i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

fn subset(small: &[u64], big: &[u64]) -> bool {
    small.iter().zip(big).all(|(s, b)| s & !b == 0)
}

struct IndexedAction {
    pre: Bits,
    add: Bits,
    /// Complement of the delete set.
    keep: Bits,
}

/// A task with propositions numbered in canonical order.
pub struct IndexedTask<'t> {
    task: &'t GroundTask,
    props: Vec<&'t Name>,
    actions: Vec<IndexedAction>,
    /// Actions watched by each proposition. Every action with a
    /// precondition sits in exactly one list, keyed by its rarest one.
    watch: Vec<Vec<usize>>,
    unconditional: Vec<usize>,
    init: Bits,
    goal: Bits,
}

impl<'t> IndexedTask<'t> {
    pub fn new(task: &'t GroundTask) -> IndexedTask<'t> {
        let props: Vec<&Name> = task.props.iter().collect();
        let index: HashMap<&Name, usize> = props.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let words = props.len().div_ceil(64).max(1);
        let to_bits = |set_of: &mut dyn Iterator<Item = &Name>| {
            let mut b = empty_bits(words);
            for p in set_of {
                set(&mut b, index[p]);
            }
            b
        };
        let mut freq = vec![0usize; props.len()];
        for a in &task.actions {
            for p in &a.pre {
                freq[index[p]] += 1;
            }
        }
        let mut watch = vec![Vec::new(); props.len()];
        let mut unconditional = Vec::new();
        let mut actions = Vec::with_capacity(task.actions.len());
        for (i, a) in task.actions.iter().enumerate() {
            let keep: Bits = to_bits(&mut a.del.iter()).iter().map(|w| !w).collect();
            actions.push(IndexedAction {
                pre: to_bits(&mut a.pre.iter()),
                add: to_bits(&mut a.add.iter()),
                keep,
            });
            match a.pre.iter().map(|p| index[p]).min_by_key(|&p| (freq[p], p)) {
                Some(p) => watch[p].push(i),
                None => unconditional.push(i),
            }
        }
        IndexedTask {
            task,
            init: to_bits(&mut task.init.true_props.iter()),
            goal: to_bits(&mut task.goal.iter()),
            props,
            actions,
            watch,
            unconditional,
        }
    }

    fn is_goal(&self, s: &[u64]) -> bool {
        subset(&self.goal, s)
    }

    /// Applicable action indices in canonical order.
    fn applicable(&self, s: &[u64], out: &mut Vec<usize>) {
        out.clear();
        out.extend_from_slice(&self.unconditional);
        for (w, &word) in s.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let p = w * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                for &a in &self.watch[p] {
                    if subset(&self.actions[a].pre, s) {
                        out.push(a);
                    }
                }
            }
        }
        out.sort_unstable();
    }

    fn successor(&self, s: &[u64], a: usize) -> Bits {
        let act = &self.actions[a];
        s.iter()
            .zip(act.keep.iter())
            .zip(act.add.iter())
            .map(|((w, k), add)| (w & k) | add)
            .collect()
    }

    fn to_state(&self, s: &[u64]) -> State {
        let mut out = State::default();
        for (w, &word) in s.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let p = w * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                out.true_props.insert(self.props[p].clone());
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BfsOutcome {
    Plan(Plan),
    NoPlan,
    ResourceLimit,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BfsResult {
    pub outcome: BfsOutcome,
    /// Distinct states stored when the search stopped.
    pub states: usize,
}

impl BfsResult {
    pub fn plan(&self) -> Option<&Plan> {
        match &self.outcome {
            BfsOutcome::Plan(p) => Some(p),
            _ => None,
        }
    }
}

/// Shortest plan by breadth-first search with actions tried in canonical
/// order, so the plan returned is also deterministic. Gives up once more
/// than `max_states` distinct states would be stored.
pub fn bfs_plan(task: &GroundTask, max_states: usize) -> BfsResult {
    let ix = IndexedTask::new(task);
    // state -> (parent id, action) ; the root has parent usize::MAX
    let mut seen: HashMap<Bits, usize> = HashMap::new();
    let mut nodes: Vec<(usize, usize)> = Vec::new();
    let mut queue: VecDeque<(usize, Bits)> = VecDeque::new();

    if max_states == 0 {
        return BfsResult { outcome: BfsOutcome::ResourceLimit, states: 0 };
    }
    if ix.is_goal(&ix.init) {
        return BfsResult { outcome: BfsOutcome::Plan(Plan::default()), states: 1 };
    }
    seen.insert(ix.init.clone(), 0);
    nodes.push((usize::MAX, usize::MAX));
    queue.push_back((0, ix.init.clone()));

    let mut buf = Vec::new();
    while let Some((id, s)) = queue.pop_front() {
        ix.applicable(&s, &mut buf);
        for &a in &buf {
            let next = ix.successor(&s, a);
            let Entry::Vacant(slot) = seen.entry(next) else { continue };
            let child = nodes.len();
            if ix.is_goal(slot.key()) {
                nodes.push((id, a));
                let plan = extract(&ix, &nodes, child);
                return BfsResult { outcome: BfsOutcome::Plan(plan), states: nodes.len() };
            }
            if nodes.len() >= max_states {
                return BfsResult { outcome: BfsOutcome::ResourceLimit, states: nodes.len() };
            }
            let key = slot.key().clone();
            slot.insert(child);
            nodes.push((id, a));
            queue.push_back((child, key));
        }
    }
    BfsResult { outcome: BfsOutcome::NoPlan, states: nodes.len() }
}

fn extract(ix: &IndexedTask<'_>, nodes: &[(usize, usize)], mut id: usize) -> Plan {
    let mut steps = Vec::new();
    while nodes[id].0 != usize::MAX {
        let (parent, a) = nodes[id];
        steps.push(Step::bare(ix.task.actions[a].name.clone()));
        id = parent;
    }
    steps.reverse();
    Plan::new(steps)
}

/// Every state reachable from the initial state.
#[derive(Debug, Clone)]
pub struct Reachable {
    /// In breadth-first discovery order, initial state first.
    pub states: Vec<State>,
    /// Non-goal states without any applicable action.
    pub dead_ends: usize,
    pub goal_states: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LimitReached(pub usize);

pub fn reachable_states(task: &GroundTask, max_states: usize) -> Result<Reachable, LimitReached> {
    let ix = IndexedTask::new(task);
    let mut seen: HashMap<Bits, ()> = HashMap::new();
    let mut order: Vec<Bits> = Vec::new();
    seen.insert(ix.init.clone(), ());
    order.push(ix.init.clone());
    let (mut dead_ends, mut goal_states) = (0, 0);
    let mut buf = Vec::new();
    let mut head = 0;
    while head < order.len() {
        let s = order[head].clone();
        head += 1;
        ix.applicable(&s, &mut buf);
        let goal = ix.is_goal(&s);
        if goal {
            goal_states += 1;
        } else if buf.is_empty() {
            dead_ends += 1;
        }
        for &a in &buf {
            let next = ix.successor(&s, a);
            if let Entry::Vacant(slot) = seen.entry(next.clone()) {
                if order.len() >= max_states {
                    return Err(LimitReached(max_states));
                }
                slot.insert(());
                order.push(next);
            }
        }
    }
    Ok(Reachable {
        states: order.iter().map(|s| ix.to_state(s)).collect(),
        dead_ends,
        goal_states,
    })
}
