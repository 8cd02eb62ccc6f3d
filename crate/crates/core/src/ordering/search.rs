//! Exhaustive decision procedure: consistency of single-step fiber orders
//! as a boolean satisfiability problem.
//!
//! One variable per unordered pair of a single-face fiber says which member
//! comes first. Each adjacent identity asks two such literals to be equal,
//! which is solved up front with a parity union-find. Transitivity inside a
//! fiber becomes two clauses per triple, handed to a small DPLL solver.

use std::collections::{BTreeMap, HashMap};

use super::{composite_fibers, face_fibers, find_local_witness, identity_pair, FiberKey, NncmoResult, OrderingAssignment, Witness, WitnessKind};
use crate::error::{Error, Result};
use crate::simplicial::{SimplexRef, SimplicialSet};

pub const DEFAULT_NODE_LIMIT: u64 = 1_000_000;

/// A literal: variable index and whether it is asserted true.
type Lit = (usize, bool);

struct Encoding {
    keys: Vec<FiberKey>,
    members: Vec<Vec<SimplexRef>>,
    /// `(fiber, a, b)` with `a < b` positions in `members[fiber]`.
    vars: HashMap<(usize, usize, usize), usize>,
    key_index: HashMap<FiberKey, usize>,
    positions: Vec<HashMap<SimplexRef, usize>>,
}

impl Encoding {
    fn new(x: &SimplicialSet, cutoff: usize) -> Encoding {
        let mut e = Encoding {
            keys: Vec::new(),
            members: Vec::new(),
            vars: HashMap::new(),
            key_index: HashMap::new(),
            positions: Vec::new(),
        };
        let mut next = 0;
        for n in 1..=cutoff {
            for i in 0..=n {
                for (target, members) in face_fibers(x, n, i) {
                    let f = e.keys.len();
                    for a in 0..members.len() {
                        for b in a + 1..members.len() {
                            e.vars.insert((f, a, b), next);
                            next += 1;
                        }
                    }
                    let key = FiberKey { level: n, face: i, target };
                    e.key_index.insert(key.clone(), f);
                    e.positions.push(members.iter().enumerate().map(|(p, s)| (s.clone(), p)).collect());
                    e.keys.push(key);
                    e.members.push(members);
                }
            }
        }
        e
    }

    fn var_count(&self) -> usize {
        self.vars.len()
    }

    /// The literal "`s` precedes `t`" in the given fiber.
    fn precedes(&self, key: &FiberKey, s: &SimplexRef, t: &SimplexRef) -> Lit {
        let f = self.key_index[key];
        let (a, b) = (self.positions[f][s], self.positions[f][t]);
        if a < b {
            (self.vars[&(f, a, b)], true)
        } else {
            (self.vars[&(f, b, a)], false)
        }
    }

    /// "`s` precedes `t`" in the order a two-step word induces.
    fn induced(&self, x: &SimplicialSet, word: &[usize], s: &SimplexRef, t: &SimplexRef) -> Lit {
        let level = x.level_of(s);
        let (ms, mt) = (x.face(s, word[0]).expect("in range"), x.face(t, word[0]).expect("in range"));
        if ms != mt {
            let target = x.face(&ms, word[1]).expect("in range");
            self.precedes(&FiberKey { level: level - 1, face: word[1], target }, &ms, &mt)
        } else {
            self.precedes(&FiberKey { level, face: word[0], target: ms }, s, t)
        }
    }
}

/// Union-find over variables where each node stores its parity relative to
/// its parent.
struct ParityUnion {
    parent: Vec<usize>,
    parity: Vec<bool>,
}

impl ParityUnion {
    fn new(n: usize) -> ParityUnion {
        ParityUnion { parent: (0..n).collect(), parity: vec![false; n] }
    }

    fn find(&mut self, v: usize) -> (usize, bool) {
        let p = self.parent[v];
        if p == v {
            return (v, false);
        }
        let (root, up) = self.find(p);
        self.parent[v] = root;
        self.parity[v] ^= up;
        (root, self.parity[v])
    }

    /// Records `a == b`; false on contradiction.
    fn equate(&mut self, a: Lit, b: Lit) -> bool {
        let (ra, pa) = self.find(a.0);
        let (rb, pb) = self.find(b.0);
        // value(a.0) = value(ra) ^ pa, and lit a is value(a.0) ^ !a.1
        let diff = pa ^ pb ^ !a.1 ^ !b.1;
        if ra == rb {
            return !diff;
        }
        self.parent[rb] = ra;
        self.parity[rb] = diff;
        true
    }
}

struct Dpll {
    clauses: Vec<Vec<Lit>>,
    watch: Vec<Vec<usize>>,
    value: Vec<Option<bool>>,
    trail: Vec<usize>,
    nodes: u64,
    limit: u64,
}

enum Outcome {
    Sat,
    Unsat,
    Limit,
}

impl Dpll {
    fn new(vars: usize, clauses: Vec<Vec<Lit>>, limit: u64) -> Dpll {
        let mut watch = vec![Vec::new(); vars];
        for (c, clause) in clauses.iter().enumerate() {
            for &(v, _) in clause {
                watch[v].push(c);
            }
        }
        Dpll { clauses, watch, value: vec![None; vars], trail: Vec::new(), nodes: 0, limit }
    }

    fn assign(&mut self, v: usize, b: bool) {
        self.value[v] = Some(b);
        self.trail.push(v);
    }

    fn undo(&mut self, to: usize) {
        while self.trail.len() > to {
            let v = self.trail.pop().expect("nonempty");
            self.value[v] = None;
        }
    }

    /// Unit propagation from the trail position `from`; false on conflict.
    fn propagate(&mut self, mut from: usize) -> bool {
        while from < self.trail.len() {
            let v = self.trail[from];
            from += 1;
            for k in 0..self.watch[v].len() {
                let c = self.watch[v][k];
                let mut unassigned = None;
                let mut free = 0;
                let mut satisfied = false;
                for &(u, pos) in &self.clauses[c] {
                    match self.value[u] {
                        Some(b) if b == pos => {
                            satisfied = true;
                            break;
                        }
                        Some(_) => {}
                        None => {
                            free += 1;
                            unassigned = Some((u, pos));
                        }
                    }
                }
                if satisfied {
                    continue;
                }
                match (free, unassigned) {
                    (0, _) => return false,
                    (1, Some((u, pos))) => self.assign(u, pos),
                    _ => {}
                }
            }
        }
        true
    }

    fn solve(&mut self) -> Outcome {
        // clauses that start out unit
        for c in 0..self.clauses.len() {
            if self.clauses[c].len() == 1 {
                let (u, pos) = self.clauses[c][0];
                match self.value[u] {
                    Some(b) if b != pos => return Outcome::Unsat,
                    Some(_) => {}
                    None => self.assign(u, pos),
                }
            }
        }
        if !self.propagate(0) {
            return Outcome::Unsat;
        }
        self.branch()
    }

    fn branch(&mut self) -> Outcome {
        let Some(v) = self.value.iter().position(Option::is_none) else {
            return Outcome::Sat;
        };
        for b in [true, false] {
            self.nodes += 1;
            if self.nodes > self.limit {
                return Outcome::Limit;
            }
            let mark = self.trail.len();
            self.assign(v, b);
            if self.propagate(mark) {
                match self.branch() {
                    Outcome::Unsat => {}
                    other => return other,
                }
            }
            self.undo(mark);
        }
        Outcome::Unsat
    }
}

/// Decides by exhaustive search whether an assignment of fiber orders up to
/// `cutoff` is consistent on every adjacent identity.
pub fn search_nncmo(x: &SimplicialSet, cutoff: usize) -> Result<NncmoResult> {
    search_nncmo_with_limit(x, cutoff, DEFAULT_NODE_LIMIT)
}

pub fn search_nncmo_with_limit(x: &SimplicialSet, cutoff: usize, limit: u64) -> Result<NncmoResult> {
    let enc = Encoding::new(x, cutoff);
    let mut uf = ParityUnion::new(enc.var_count());
    let mut first_constraint: Option<(usize, SimplexRef, Vec<SimplexRef>, Vec<usize>, Vec<usize>)> = None;
    let mut consistent = true;
    'levels: for n in 2..=cutoff {
        for j in 1..=n {
            for i in 0..j {
                let (a, b) = identity_pair(i, j);
                for (target, fiber) in composite_fibers(x, n, &a) {
                    if fiber.len() < 2 {
                        continue;
                    }
                    if first_constraint.is_none() {
                        first_constraint = Some((n, target.clone(), fiber.clone(), a.clone(), b.clone()));
                    }
                    for p in 0..fiber.len() {
                        for q in p + 1..fiber.len() {
                            let la = enc.induced(x, &a, &fiber[p], &fiber[q]);
                            let lb = enc.induced(x, &b, &fiber[p], &fiber[q]);
                            if !uf.equate(la, lb) {
                                consistent = false;
                                first_constraint = Some((n, target, fiber, a, b));
                                break 'levels;
                            }
                        }
                    }
                }
            }
        }
    }

    let solution = if consistent {
        let mut class_of = vec![(0usize, false); enc.var_count()];
        let mut classes: BTreeMap<usize, usize> = BTreeMap::new();
        for v in 0..enc.var_count() {
            let (root, parity) = uf.find(v);
            let next = classes.len();
            let c = *classes.entry(root).or_insert(next);
            class_of[v] = (c, parity);
        }
        let lit = |v: usize, pos: bool| -> Lit {
            let (c, parity) = class_of[v];
            (c, pos ^ parity)
        };
        let mut clauses = Vec::new();
        for (f, members) in enc.members.iter().enumerate() {
            let m = members.len();
            for a in 0..m {
                for b in a + 1..m {
                    for c in b + 1..m {
                        let (ab, bc, ac) = (enc.vars[&(f, a, b)], enc.vars[&(f, b, c)], enc.vars[&(f, a, c)]);
                        clauses.push(vec![lit(ab, false), lit(bc, false), lit(ac, true)]);
                        clauses.push(vec![lit(ab, true), lit(bc, true), lit(ac, false)]);
                    }
                }
            }
        }
        let mut solver = Dpll::new(classes.len(), clauses, limit);
        match solver.solve() {
            Outcome::Sat => Some(
                (0..enc.var_count())
                    .map(|v| {
                        let (c, parity) = class_of[v];
                        solver.value[c].unwrap_or(true) ^ parity
                    })
                    .collect::<Vec<bool>>(),
            ),
            Outcome::Unsat => None,
            Outcome::Limit => return Err(Error::SearchInconclusive { cutoff, limit }),
        }
    } else {
        None
    };

    match solution {
        Some(values) => {
            let mut assignment = OrderingAssignment::new(cutoff);
            for (f, members) in enc.members.iter().enumerate() {
                let m = members.len();
                let mut ranked: Vec<(usize, usize)> = (0..m)
                    .map(|p| {
                        let before = (0..m)
                            .filter(|&q| q != p)
                            .filter(|&q| {
                                let (lo, hi) = (p.min(q), p.max(q));
                                let lo_first = values[enc.vars[&(f, lo, hi)]];
                                // q precedes p
                                if q < p { lo_first } else { !lo_first }
                            })
                            .count();
                        (before, p)
                    })
                    .collect();
                ranked.sort_unstable();
                assignment.set(enc.keys[f].clone(), ranked.into_iter().map(|(_, p)| members[p].clone()).collect());
            }
            Ok(NncmoResult::Admits(assignment))
        }
        None => {
            if let Some(w) = find_local_witness(x, cutoff) {
                return Ok(NncmoResult::Fails(w));
            }
            let (n, target, fiber, a, b) = first_constraint.expect("an unsatisfiable instance has a constraint");
            Ok(NncmoResult::Fails(Witness::new(x, n, target, fiber, a, b, WitnessKind::Global)))
        }
    }
}
