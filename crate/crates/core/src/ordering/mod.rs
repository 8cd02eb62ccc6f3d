//! Orderings on fibers of face maps.
//!
//! An [`OrderingAssignment`] fixes a total order on every fiber of every
//! single face map `d_i: X_n -> X_{n-1}` over a non-basepoint target.
//! Orders on fibers of composites are induced lexicographically: two
//! simplices are compared at the last step before their images coincide.
//! The assignment is consistent when every pair of factorizations of the
//! same composite induces the same order on every fiber over a
//! non-basepoint simplex.

mod actions;
mod search;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simplicial::{SimplexRef, SimplicialSet};

pub use actions::{classify_actions, classify_actions_with, ActionClass, ActionClassReport, ActionSite, ClassType};
pub use search::{search_nncmo, search_nncmo_with_limit, DEFAULT_NODE_LIMIT};

/// Identifies one fiber of `d_face: X_level -> X_{level-1}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FiberKey {
    pub level: usize,
    pub face: usize,
    pub target: SimplexRef,
}

/// A total order on one fiber of a face map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberOrdering {
    pub level: usize,
    pub face: usize,
    pub target: SimplexRef,
    pub order: Vec<SimplexRef>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OrderingAssignment {
    cutoff: usize,
    fibers: BTreeMap<FiberKey, Vec<SimplexRef>>,
}

impl OrderingAssignment {
    pub fn new(cutoff: usize) -> OrderingAssignment {
        OrderingAssignment { cutoff, fibers: BTreeMap::new() }
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn set(&mut self, key: FiberKey, order: Vec<SimplexRef>) {
        self.fibers.insert(key, order);
    }

    pub fn get(&self, key: &FiberKey) -> Option<&[SimplexRef]> {
        self.fibers.get(key).map(Vec::as_slice)
    }

    pub fn fibers(&self) -> impl Iterator<Item = FiberOrdering> + '_ {
        self.fibers.iter().map(|(k, v)| FiberOrdering {
            level: k.level,
            face: k.face,
            target: k.target.clone(),
            order: v.clone(),
        })
    }

    pub fn from_fibers(cutoff: usize, fibers: impl IntoIterator<Item = FiberOrdering>) -> OrderingAssignment {
        let mut a = OrderingAssignment::new(cutoff);
        for f in fibers {
            a.set(FiberKey { level: f.level, face: f.face, target: f.target }, f.order);
        }
        a
    }

    /// Restricts per-level total orders (of non-basepoint simplices) to every
    /// fiber up to `cutoff`.
    pub fn from_level_orders(x: &SimplicialSet, cutoff: usize, levels: &[Vec<SimplexRef>]) -> OrderingAssignment {
        let mut a = OrderingAssignment::new(cutoff);
        for n in 1..=cutoff {
            let rank: HashMap<&SimplexRef, usize> = levels[n].iter().enumerate().map(|(i, s)| (s, i)).collect();
            for i in 0..=n {
                for (target, mut members) in face_fibers(x, n, i) {
                    members.sort_by_key(|s| rank[s]);
                    a.set(FiberKey { level: n, face: i, target }, members);
                }
            }
        }
        a
    }

    /// Checks that every fiber up to the cutoff is present and ordered by a
    /// permutation of its members.
    pub fn check_coverage(&self, x: &SimplicialSet) -> Result<()> {
        for n in 1..=self.cutoff {
            for i in 0..=n {
                for (target, members) in face_fibers(x, n, i) {
                    let key = FiberKey { level: n, face: i, target };
                    let Some(order) = self.fibers.get(&key) else {
                        return Err(Error::MissingFiberOrder(describe_key(x, &key)));
                    };
                    let a: BTreeSet<_> = order.iter().collect();
                    let b: BTreeSet<_> = members.iter().collect();
                    if a != b || order.len() != members.len() {
                        return Err(Error::MissingFiberOrder(format!(
                            "order on {} is not a permutation of the fiber",
                            describe_key(x, &key)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

fn describe_key(x: &SimplicialSet, key: &FiberKey) -> String {
    format!("fiber of d_{} over {} at level {}", key.face, x.label(&key.target), key.level)
}

/// Fibers of `d_i: X_n -> X_{n-1}` over non-basepoint targets, members in
/// level order, keyed in level order of the target.
pub fn face_fibers(x: &SimplicialSet, n: usize, i: usize) -> BTreeMap<SimplexRef, Vec<SimplexRef>> {
    let mut out: BTreeMap<SimplexRef, Vec<SimplexRef>> = BTreeMap::new();
    for s in x.level(n).non_basepoint() {
        let t = x.face(s, i).expect("index in range");
        if !t.is_basepoint() {
            out.entry(t).or_default().push(s.clone());
        }
    }
    out
}

/// Fibers of the composite of a word of face maps (first entry applied
/// first) over non-basepoint targets.
pub fn composite_fibers(x: &SimplicialSet, n: usize, word: &[usize]) -> BTreeMap<SimplexRef, Vec<SimplexRef>> {
    let mut out: BTreeMap<SimplexRef, Vec<SimplexRef>> = BTreeMap::new();
    for s in x.level(n).non_basepoint() {
        let t = x.faces_along(s, word).expect("indices in range");
        if !t.is_basepoint() {
            out.entry(t).or_default().push(s.clone());
        }
    }
    out
}

/// Writes a word of face maps in composition notation, e.g. `[3, 1]` (apply
/// `d_3` first) becomes `d1d3`.
pub fn composition_name(word: &[usize]) -> String {
    word.iter().rev().map(|i| format!("d{i}")).collect()
}

/// Original indices deleted by a word of face maps on `[n]`; two words are
/// equal as maps iff these sets agree.
pub fn deleted_indices(n: usize, word: &[usize]) -> Vec<usize> {
    let mut kept: Vec<usize> = (0..=n).collect();
    let mut deleted: Vec<usize> = word.iter().map(|&i| kept.remove(i)).collect();
    deleted.sort_unstable();
    deleted
}

fn chain(x: &SimplicialSet, s: &SimplexRef, word: &[usize]) -> Result<Vec<SimplexRef>> {
    let mut out = vec![s.clone()];
    for &i in word {
        let next = x.face(out.last().expect("nonempty"), i)?;
        out.push(next);
    }
    Ok(out)
}

/// Compares two members of a composite fiber in the composition-induced order.
fn induced_cmp(
    assignment: &OrderingAssignment,
    n: usize,
    word: &[usize],
    a: &[SimplexRef],
    b: &[SimplexRef],
    x: &SimplicialSet,
) -> Result<Ordering> {
    let Some(t) = (0..word.len()).rev().find(|&t| a[t] != b[t]) else {
        return Ok(Ordering::Equal);
    };
    let key = FiberKey { level: n - t, face: word[t], target: a[t + 1].clone() };
    let order = assignment
        .get(&key)
        .ok_or_else(|| Error::MissingFiberOrder(describe_key(x, &key)))?;
    let pos = |s: &SimplexRef| {
        order
            .iter()
            .position(|o| o == s)
            .ok_or_else(|| Error::MissingFiberOrder(format!("{} not in {}", x.label(s), describe_key(x, &key))))
    };
    Ok(pos(&a[t])?.cmp(&pos(&b[t])?))
}

/// The order a composite fiber inherits from single-step orders. `word`
/// lists the face maps in application order.
pub fn composition_induced_order(
    x: &SimplicialSet,
    assignment: &OrderingAssignment,
    n: usize,
    word: &[usize],
    fiber: &[SimplexRef],
) -> Result<Vec<SimplexRef>> {
    let chains = fiber.iter().map(|s| chain(x, s, word)).collect::<Result<Vec<_>>>()?;
    let mut ranked = Vec::with_capacity(fiber.len());
    for (k, c) in chains.iter().enumerate() {
        let mut rank = 0;
        for (l, d) in chains.iter().enumerate() {
            if l != k && induced_cmp(assignment, n, word, d, c, x)? == Ordering::Less {
                rank += 1;
            }
        }
        ranked.push((rank, fiber[k].clone()));
    }
    ranked.sort();
    Ok(ranked.into_iter().map(|(_, s)| s).collect())
}

/// Why a [`Witness`] certifies failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessKind {
    /// No total order of the fiber is induced by both factorizations, for
    /// any choice of single-step orders.
    Unsatisfiable,
    /// A specific assignment induces these two different orders.
    Disagreement { order_a: Vec<String>, order_b: Vec<String> },
    /// The search refuted every assignment but no single fiber is
    /// contradictory on its own.
    Global,
}

/// A fiber of a composite together with two equal factorizations whose
/// induced orders cannot agree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub level: usize,
    pub target: SimplexRef,
    pub target_label: String,
    pub fiber: Vec<SimplexRef>,
    pub fiber_labels: Vec<String>,
    /// Face maps in application order.
    pub factorization_a: Vec<usize>,
    pub factorization_b: Vec<usize>,
    pub kind: WitnessKind,
    pub explanation: String,
}

impl Witness {
    fn new(
        x: &SimplicialSet,
        level: usize,
        target: SimplexRef,
        fiber: Vec<SimplexRef>,
        a: Vec<usize>,
        b: Vec<usize>,
        kind: WitnessKind,
    ) -> Witness {
        let explanation = match &kind {
            WitnessKind::Unsatisfiable => format!(
                "no ordering of the {} simplices carried to {} by {} = {} agrees with both induced orderings",
                fiber.len(),
                x.label(&target),
                composition_name(&b),
                composition_name(&a)
            ),
            WitnessKind::Disagreement { order_a, order_b } => format!(
                "{} induces {} but {} induces {}",
                composition_name(&a),
                order_a.join(" < "),
                composition_name(&b),
                order_b.join(" < ")
            ),
            WitnessKind::Global => "every assignment violates some consistency condition".to_string(),
        };
        Witness {
            level,
            target_label: x.label(&target),
            target,
            fiber_labels: fiber.iter().map(|s| x.label(s)).collect(),
            fiber,
            factorization_a: a,
            factorization_b: b,
            kind,
            explanation,
        }
    }

    /// Re-checks the certificate against `x`: both factorizations delete the
    /// same indices, carry every fiber member to the target, and (for an
    /// unsatisfiable witness) no permutation of the fiber is inducible by both.
    pub fn verify(&self, x: &SimplicialSet) -> bool {
        if self.factorization_a.len() != self.factorization_b.len()
            || deleted_indices(self.level, &self.factorization_a) != deleted_indices(self.level, &self.factorization_b)
        {
            return false;
        }
        let maps_to_target = |w: &[usize]| {
            self.fiber.iter().all(|s| x.faces_along(s, w).is_ok_and(|t| t == self.target))
        };
        if !maps_to_target(&self.factorization_a) || !maps_to_target(&self.factorization_b) {
            return false;
        }
        match &self.kind {
            WitnessKind::Unsatisfiable => !jointly_inducible(x, &self.fiber, &self.factorization_a, &self.factorization_b),
            WitnessKind::Disagreement { order_a, order_b } => order_a != order_b,
            WitnessKind::Global => true,
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "level {} fiber {{{}}} over {} with {} = {}: {}",
            self.level,
            self.fiber_labels.join(", "),
            self.target_label,
            composition_name(&self.factorization_a),
            composition_name(&self.factorization_b),
            self.explanation
        )
    }
}

/// Whether a total order of a composite fiber can arise as the
/// composition-induced order of `word` for some choice of single-step orders:
/// the groups sharing a first-step image must be contiguous, and the order
/// of the groups must itself be inducible by the rest of the word.
pub fn is_inducible(x: &SimplicialSet, order: &[SimplexRef], word: &[usize]) -> bool {
    let Some((&first, rest)) = word.split_first() else {
        return order.len() <= 1;
    };
    let images: Vec<SimplexRef> = order.iter().map(|s| x.face(s, first).expect("in range")).collect();
    let mut groups: Vec<SimplexRef> = Vec::new();
    for img in &images {
        if groups.last() != Some(img) {
            if groups.contains(img) {
                return false;
            }
            groups.push(img.clone());
        }
    }
    is_inducible(x, &groups, rest)
}

/// Whether some permutation of `fiber` is inducible by both words.
pub fn jointly_inducible(x: &SimplicialSet, fiber: &[SimplexRef], a: &[usize], b: &[usize]) -> bool {
    let mut perm: Vec<SimplexRef> = fiber.to_vec();
    let mut found = false;
    permutations(&mut perm, 0, &mut |p| {
        if !found && is_inducible(x, p, a) && is_inducible(x, p, b) {
            found = true;
        }
    });
    found
}

fn permutations(items: &mut Vec<SimplexRef>, k: usize, visit: &mut dyn FnMut(&[SimplexRef])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// The two factorizations of an adjacent simplicial identity
/// `d_i d_j = d_{j-1} d_i` (`i < j`), in application order.
fn identity_pair(i: usize, j: usize) -> (Vec<usize>, Vec<usize>) {
    (vec![j, i], vec![i, j - 1])
}

/// Verifies the assignment on every adjacent identity `d_i d_j = d_{j-1} d_i`
/// at every level up to `cutoff`; returns the first disagreement found.
/// Cutoffs below 2 have nothing to check.
pub fn check_nncmo(x: &SimplicialSet, assignment: &OrderingAssignment, cutoff: usize) -> Result<Option<Witness>> {
    for n in 2..=cutoff {
        for j in 1..=n {
            for i in 0..j {
                let (a, b) = identity_pair(i, j);
                for (target, fiber) in composite_fibers(x, n, &a) {
                    if fiber.len() < 2 {
                        continue;
                    }
                    let oa = composition_induced_order(x, assignment, n, &a, &fiber)?;
                    let ob = composition_induced_order(x, assignment, n, &b, &fiber)?;
                    if oa != ob {
                        let kind = WitnessKind::Disagreement {
                            order_a: oa.iter().map(|s| x.label(s)).collect(),
                            order_b: ob.iter().map(|s| x.label(s)).collect(),
                        };
                        return Ok(Some(Witness::new(x, n, target, fiber, a, b, kind)));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn face_words(n: usize, len: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if prefix.len() == len {
        out.push(prefix.clone());
        return;
    }
    let level = n - prefix.len();
    for i in 0..=level {
        prefix.push(i);
        face_words(n, len, prefix, out);
        prefix.pop();
    }
}

/// Every word of face maps of length `len` starting at level `n`, grouped
/// by the composite map they represent.
pub fn factorizations(n: usize, len: usize) -> BTreeMap<Vec<usize>, Vec<Vec<usize>>> {
    let mut words = Vec::new();
    face_words(n, len, &mut Vec::new(), &mut words);
    let mut out: BTreeMap<Vec<usize>, Vec<Vec<usize>>> = BTreeMap::new();
    for w in words {
        out.entry(deleted_indices(n, &w)).or_default().push(w);
    }
    out
}

/// Compares the induced orders of all factorizations of every composite of
/// face maps, not only adjacent identities. Exponential; meant as a check of
/// [`check_nncmo`] on small inputs.
pub fn check_nncmo_full(x: &SimplicialSet, assignment: &OrderingAssignment, cutoff: usize) -> Result<Option<Witness>> {
    for n in 2..=cutoff {
        for len in 2..=n {
            for words in factorizations(n, len).values() {
                let reference = &words[0];
                for (target, fiber) in composite_fibers(x, n, reference) {
                    if fiber.len() < 2 {
                        continue;
                    }
                    let base = composition_induced_order(x, assignment, n, reference, &fiber)?;
                    for w in &words[1..] {
                        let other = composition_induced_order(x, assignment, n, w, &fiber)?;
                        if other != base {
                            let kind = WitnessKind::Disagreement {
                                order_a: base.iter().map(|s| x.label(s)).collect(),
                                order_b: other.iter().map(|s| x.label(s)).collect(),
                            };
                            return Ok(Some(Witness::new(x, n, target, fiber, reference.clone(), w.clone(), kind)));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Largest fiber for which [`find_local_witness`] enumerates permutations.
const MAX_WITNESS_FIBER: usize = 8;

/// The first adjacent-identity fiber (in level, `j`, `i`, target order) that
/// is contradictory on its own, whatever the single-step orders.
pub fn find_local_witness(x: &SimplicialSet, cutoff: usize) -> Option<Witness> {
    for n in 2..=cutoff {
        for j in 1..=n {
            for i in 0..j {
                let (a, b) = identity_pair(i, j);
                for (target, fiber) in composite_fibers(x, n, &a) {
                    if fiber.len() < 3 || fiber.len() > MAX_WITNESS_FIBER {
                        continue;
                    }
                    if !jointly_inducible(x, &fiber, &a, &b) {
                        return Some(Witness::new(x, n, target, fiber, a, b, WitnessKind::Unsatisfiable));
                    }
                }
            }
        }
    }
    None
}

/// Outcome of an NNCMO decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NncmoResult {
    Admits(OrderingAssignment),
    Fails(Witness),
}

impl NncmoResult {
    pub fn admits(&self) -> bool {
        matches!(self, NncmoResult::Admits(_))
    }
}

/// Per-level total orders of `X_n` minus the basepoint for a simplicial set
/// of dimension at most one: simplices over 1-simplices first, by the input
/// order of the 1-simplex and then alphabetically by the 0/1 pattern, then
/// degenerate non-basepoint vertices in input order.
///
/// The result is checked to be order preserving on non-basepoint faces:
/// `s < t` and `d_i s, d_i t` both non-basepoint imply `d_i s <= d_i t`.
pub fn cyclic_ordering(x: &SimplicialSet, cutoff: usize) -> Result<Vec<Vec<SimplexRef>>> {
    if x.dimension() > 1 {
        return Err(Error::NotOneDimensional(x.dimension()));
    }
    let key = |s: &SimplexRef| {
        let dim = x.simplex(s.base).dim;
        (usize::from(dim == 0), s.base, x.pattern(s))
    };
    let levels: Vec<Vec<SimplexRef>> = (0..=cutoff)
        .map(|n| {
            let mut l = x.level(n).non_basepoint().to_vec();
            l.sort_by_key(|s| key(s));
            l
        })
        .collect();
    if let Some((n, s, t, i)) = monotonicity_violation(x, &levels) {
        return Err(Error::NoCyclicOrdering(format!(
            "{} < {} at level {n} but d_{i} reverses them",
            x.label(&s),
            x.label(&t)
        )));
    }
    Ok(levels)
}

/// First `(level, s, t, i)` with `s < t` whose non-basepoint faces
/// `d_i s > d_i t`.
pub fn monotonicity_violation(
    x: &SimplicialSet,
    levels: &[Vec<SimplexRef>],
) -> Option<(usize, SimplexRef, SimplexRef, usize)> {
    for n in 2..levels.len() {
        let below: HashMap<&SimplexRef, usize> = levels[n - 1].iter().enumerate().map(|(k, s)| (s, k)).collect();
        for (p, s) in levels[n].iter().enumerate() {
            for t in &levels[n][p + 1..] {
                for i in 0..=n {
                    let (fs, ft) = (x.face(s, i).expect("in range"), x.face(t, i).expect("in range"));
                    if fs.is_basepoint() || ft.is_basepoint() {
                        continue;
                    }
                    if below[&fs] > below[&ft] {
                        return Some((n, s.clone(), t.clone(), i));
                    }
                }
            }
        }
    }
    None
}

/// Decides the NNCMO question from the dimension alone. One-dimensional sets
/// get the assignment restricted from [`cyclic_ordering`] (or, when no such
/// ordering exists, one found by [`search_nncmo`]); higher-dimensional sets
/// get the four-simplex witness `s2s0σ, s3s0σ, s3s1σ, s1s1σ` over the first
/// nondegenerate simplex `σ` of least dimension `>= 2`, for `d2d1 = d1d3`.
pub fn classify_nncmo(x: &SimplicialSet, cutoff: usize) -> Result<NncmoResult> {
    if x.dimension() <= 1 {
        return match cyclic_ordering(x, cutoff) {
            Ok(levels) => Ok(NncmoResult::Admits(OrderingAssignment::from_level_orders(x, cutoff, &levels))),
            Err(Error::NoCyclicOrdering(_)) => search_nncmo(x, cutoff),
            Err(e) => Err(e),
        };
    }
    Ok(NncmoResult::Fails(generic_witness(x)))
}

/// The witness used by [`classify_nncmo`] for sets of dimension at least two.
pub fn generic_witness(x: &SimplicialSet) -> Witness {
    let (id, sigma) = x
        .nondegenerate()
        .iter()
        .enumerate()
        .filter(|(_, s)| s.dim >= 2)
        .min_by_key(|(id, s)| (s.dim, *id))
        .expect("dimension at least two");
    let fiber: Vec<SimplexRef> = [[2, 0], [3, 0], [3, 1], [1, 1]]
        .iter()
        .map(|w| x.apply_degeneracies(id, w).expect("valid degeneracies"))
        .collect();
    Witness::new(
        x,
        sigma.dim + 2,
        SimplexRef::nondegenerate(id),
        fiber,
        vec![1, 2],
        vec![3, 1],
        WitnessKind::Unsatisfiable,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(x: &SimplicialSet, v: &[SimplexRef]) -> Vec<String> {
        v.iter().map(|s| x.label(s)).collect()
    }

    #[test]
    fn circle_cyclic_ordering_matches_figure() {
        let x = SimplicialSet::circle();
        let levels = cyclic_ordering(&x, 4).unwrap();
        assert_eq!(labels(&x, &levels[1]), ["[01]"]);
        assert_eq!(labels(&x, &levels[2]), ["[001]", "[011]"]);
        assert_eq!(labels(&x, &levels[3]), ["[0001]", "[0011]", "[0111]"]);
        assert_eq!(labels(&x, &levels[4]), ["[00001]", "[00011]", "[00111]", "[01111]"]);
    }

    #[test]
    fn wedge_interleaving() {
        let x = SimplicialSet::wedge_of_circles(2);
        let levels = cyclic_ordering(&x, 2).unwrap();
        assert_eq!(labels(&x, &levels[2]), ["[001]_e1", "[011]_e1", "[001]_e2", "[011]_e2"]);
    }

    #[test]
    fn cyclic_ordering_needs_dimension_one() {
        assert!(matches!(cyclic_ordering(&SimplicialSet::sphere2(), 3), Err(Error::NotOneDimensional(2))));
    }

    #[test]
    fn single_step_composition_is_the_fiber_order() {
        let x = SimplicialSet::circle();
        let a = classify_assignment(&x, 3);
        for f in a.fibers() {
            let induced = composition_induced_order(&x, &a, f.level, &[f.face], &f.order).unwrap();
            assert_eq!(induced, f.order);
        }
    }

    fn classify_assignment(x: &SimplicialSet, cutoff: usize) -> OrderingAssignment {
        match classify_nncmo(x, cutoff).unwrap() {
            NncmoResult::Admits(a) => a,
            NncmoResult::Fails(w) => panic!("unexpected witness {w}"),
        }
    }

    #[test]
    fn missing_fiber_is_an_error() {
        let x = SimplicialSet::circle();
        let empty = OrderingAssignment::new(3);
        let fiber = x.level(2).non_basepoint().to_vec();
        let err = composition_induced_order(&x, &empty, 2, &[1], &fiber).unwrap_err();
        assert!(matches!(err, Error::MissingFiberOrder(_)));
        assert!(empty.check_coverage(&x).is_err());
        assert!(classify_assignment(&x, 3).check_coverage(&x).is_ok());
    }

    #[test]
    fn sphere_fiber_is_contradictory_under_every_assignment() {
        let x = SimplicialSet::sphere2();
        // the d2d1 fiber over sigma at level 4
        let fibers = composite_fibers(&x, 4, &[1, 2]);
        let fiber = &fibers[&SimplexRef::nondegenerate(1)];
        let mut l: Vec<String> = labels(&x, fiber);
        l.sort();
        assert_eq!(l, ["[00112]", "[00122]", "[01112]", "[01122]"]);
        assert!(!jointly_inducible(&x, fiber, &[1, 2], &[3, 1]));
        // each factorization alone is satisfiable
        assert!(jointly_inducible(&x, fiber, &[1, 2], &[1, 2]));
    }

    #[test]
    fn generic_witness_verifies() {
        for x in [SimplicialSet::sphere2(), SimplicialSet::simplex2_boundary_collapsed()] {
            let w = generic_witness(&x);
            assert_eq!(w.fiber_labels, ["[00112]", "[00122]", "[01122]", "[01112]"]);
            assert!(w.verify(&x), "{w}");
            assert_eq!(composition_name(&w.factorization_a), "d2d1");
            assert_eq!(composition_name(&w.factorization_b), "d1d3");
        }
    }

    #[test]
    fn deleted_indices_identify_equal_composites() {
        // d_1 d_3 = d_2 d_1 on level 4
        assert_eq!(deleted_indices(4, &[3, 1]), deleted_indices(4, &[1, 2]));
        assert_ne!(deleted_indices(4, &[1, 1]), deleted_indices(4, &[1, 2]));
        let f = factorizations(3, 2);
        // C(4, 2) composites, each with 2 factorizations
        assert_eq!(f.len(), 6);
        assert!(f.values().all(|w| w.len() == 2));
    }

    #[test]
    fn point_is_trivially_consistent() {
        let x = SimplicialSet::point();
        let a = classify_assignment(&x, 4);
        assert_eq!(check_nncmo(&x, &a, 4).unwrap(), None);
    }
}
