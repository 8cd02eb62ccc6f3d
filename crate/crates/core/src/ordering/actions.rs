//! Action sites and their identification classes.
//!
//! A site is a non-basepoint simplex `σ` with a face index `i` such that
//! `d_i σ` is the basepoint; the algebra element of `σ` then acts on the
//! coefficient module. Sites are merged by the four identification rules
//! below, and each class is typed by looking for two equal composites that
//! kill a pair of simplices in opposite orders.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{classify_nncmo, deleted_indices, face_words, FiberKey, NncmoResult, OrderingAssignment};
use crate::error::{Error, Result};
use crate::simplicial::{SimplexRef, SimplicialSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassType {
    Left,
    Right,
    LR,
    Untyped,
}

impl ClassType {
    /// Swaps left and right; homology uses the mirror image of the typing
    /// computed for cohomology.
    pub fn mirrored(self) -> ClassType {
        match self {
            ClassType::Left => ClassType::Right,
            ClassType::Right => ClassType::Left,
            other => other,
        }
    }

    fn from_evidence(left: bool, right: bool) -> ClassType {
        match (left, right) {
            (true, true) => ClassType::LR,
            (true, false) => ClassType::Left,
            (false, true) => ClassType::Right,
            (false, false) => ClassType::Untyped,
        }
    }
}

impl fmt::Display for ClassType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassType::Left => "left",
            ClassType::Right => "right",
            ClassType::LR => "lr",
            ClassType::Untyped => "untyped",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ActionSite {
    pub level: usize,
    pub simplex: SimplexRef,
    pub face: usize,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionClass {
    pub id: usize,
    pub kind: ClassType,
    pub sites: Vec<ActionSite>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionClassReport {
    pub cutoff: usize,
    pub classes: Vec<ActionClass>,
    pub notes: Vec<String>,
}

impl ActionClassReport {
    pub fn mirrored(&self) -> ActionClassReport {
        let mut out = self.clone();
        for c in &mut out.classes {
            c.kind = c.kind.mirrored();
        }
        out
    }

    /// The class containing site `(simplex, face)`, if any.
    pub fn class_of(&self, simplex: &SimplexRef, face: usize) -> Option<usize> {
        self.classes
            .iter()
            .find(|c| c.sites.iter().any(|s| &s.simplex == simplex && s.face == face))
            .map(|c| c.id)
    }
}

const TYPING_NOTE: &str = "types describe cochain cofaces; chain complexes use the mirror image (left and right swapped)";
const CLASS_NOTE: &str = "classes are the identification classes of sites up to the cutoff; \
                          sites first appearing above the cutoff are not listed";

type Site = (SimplexRef, usize);

struct Sites {
    index: HashMap<Site, usize>,
    sites: Vec<Site>,
    parent: Vec<usize>,
}

impl Sites {
    fn find(&mut self, k: usize) -> usize {
        let p = self.parent[k];
        if p == k {
            return k;
        }
        let r = self.find(p);
        self.parent[k] = r;
        r
    }

    fn union(&mut self, a: &Site, b: &Site) {
        let (ka, kb) = (self.index[a], self.index[b]);
        let (ra, rb) = (self.find(ka), self.find(kb));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }
}

/// Sites up to `cutoff`, classified under the identification rules and typed
/// using the ordering produced by [`classify_nncmo`]. Sets without a
/// consistent ordering get untyped classes.
pub fn classify_actions(x: &SimplicialSet, cutoff: usize) -> Result<ActionClassReport> {
    match classify_nncmo(x, cutoff)? {
        NncmoResult::Admits(a) => classify_actions_with(x, cutoff, Some(&a)),
        NncmoResult::Fails(w) => {
            let mut report = classify_actions_with(x, cutoff, None)?;
            report.notes.push(format!("no consistent ordering ({}); classes left untyped", w.explanation));
            Ok(report)
        }
    }
}

pub fn classify_actions_with(
    x: &SimplicialSet,
    cutoff: usize,
    assignment: Option<&OrderingAssignment>,
) -> Result<ActionClassReport> {
    let mut sites = Sites { index: HashMap::new(), sites: Vec::new(), parent: Vec::new() };
    for m in 1..=cutoff {
        for s in x.level(m).non_basepoint() {
            for i in 0..=m {
                if x.face(s, i)?.is_basepoint() {
                    let k = sites.sites.len();
                    sites.index.insert((s.clone(), i), k);
                    sites.sites.push((s.clone(), i));
                    sites.parent.push(k);
                }
            }
        }
    }

    for m in 2..=cutoff {
        for s in x.level(m).non_basepoint() {
            let faces: Vec<SimplexRef> = (0..=m).map(|i| x.face(s, i)).collect::<Result<_>>()?;
            for j in 1..=m {
                for i in 0..j {
                    let (fi, fj) = (&faces[i], &faces[j]);
                    match (fi.is_basepoint(), fj.is_basepoint()) {
                        (true, true) => sites.union(&(s.clone(), i), &(s.clone(), j)),
                        (false, true) => sites.union(&(s.clone(), j), &(fi.clone(), j - 1)),
                        (true, false) => sites.union(&(s.clone(), i), &(fj.clone(), i)),
                        (false, false) => {
                            if x.face(fj, i)?.is_basepoint() {
                                sites.union(&(fj.clone(), i), &(fi.clone(), j - 1));
                            }
                        }
                    }
                }
            }
        }
    }

    let mut evidence: HashMap<usize, (bool, bool)> = HashMap::new();
    if let Some(a) = assignment {
        for (site, left, right) in typing_evidence(x, cutoff, a)? {
            let root = sites.find(sites.index[&site]);
            let e = evidence.entry(root).or_default();
            e.0 |= left;
            e.1 |= right;
        }
    }

    // roots are minimal members, and sites were numbered in level order
    let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for k in 0..sites.sites.len() {
        let r = sites.find(k);
        by_root.entry(r).or_default().push(k);
    }
    let classes = by_root
        .into_iter()
        .enumerate()
        .map(|(id, (root, members))| {
            let (left, right) = evidence.get(&root).copied().unwrap_or_default();
            ActionClass {
                id,
                kind: ClassType::from_evidence(left, right),
                sites: members
                    .into_iter()
                    .map(|k| {
                        let (s, face) = &sites.sites[k];
                        ActionSite { level: x.level_of(s), simplex: s.clone(), face: *face, label: x.label(s) }
                    })
                    .collect(),
            }
        })
        .collect();

    let mut notes = vec![TYPING_NOTE.to_string(), CLASS_NOTE.to_string()];
    if assignment.is_none() {
        notes.push("typing needs a consistent ordering".to_string());
    }
    Ok(ActionClassReport { cutoff, classes, notes })
}

/// For one word and one pair `(p, q)` of level positions: which of the two
/// reaches the basepoint first, and where they are killed after merging.
#[derive(Default)]
struct PairTrace {
    /// `Some(true)` if `p` is killed strictly first.
    p_first: Option<bool>,
    /// Site killing the merged image, and whether `p` is the smaller one.
    merged_kill: Option<(Site, bool)>,
}

fn kill_step(chain: &[SimplexRef]) -> Option<usize> {
    chain.iter().position(SimplexRef::is_basepoint)
}

/// Evidence `(site, left, right)`: a pair merges under one factorization and
/// is killed at `site`, while an equal factorization kills the larger
/// (left) or the smaller (right) simplex strictly first.
fn typing_evidence(
    x: &SimplicialSet,
    cutoff: usize,
    assignment: &OrderingAssignment,
) -> Result<Vec<(Site, bool, bool)>> {
    let mut out = Vec::new();
    for n in 2..=cutoff {
        let simplices = x.level(n).non_basepoint().to_vec();
        let count = simplices.len();
        if count < 2 {
            continue;
        }
        for r in 2..=n {
            let mut words = Vec::new();
            face_words(n, r, &mut Vec::new(), &mut words);
            let mut groups: BTreeMap<Vec<usize>, Vec<Vec<usize>>> = BTreeMap::new();
            for w in words {
                groups.entry(deleted_indices(n, &w)).or_default().push(w);
            }
            for group in groups.values() {
                let traces: Vec<Vec<PairTrace>> =
                    group.iter().map(|w| pair_traces(x, assignment, n, w, &simplices)).collect::<Result<_>>()?;
                for pair in 0..count * (count - 1) / 2 {
                    let seen_p_first = traces.iter().any(|t| t[pair].p_first == Some(true));
                    let seen_q_first = traces.iter().any(|t| t[pair].p_first == Some(false));
                    for t in &traces {
                        if let Some((site, p_smaller)) = &t[pair].merged_kill {
                            let (larger_first, smaller_first) =
                                if *p_smaller { (seen_q_first, seen_p_first) } else { (seen_p_first, seen_q_first) };
                            if larger_first || smaller_first {
                                out.push((site.clone(), larger_first, smaller_first));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

fn pair_traces(
    x: &SimplicialSet,
    assignment: &OrderingAssignment,
    n: usize,
    word: &[usize],
    simplices: &[SimplexRef],
) -> Result<Vec<PairTrace>> {
    let chains: Vec<Vec<SimplexRef>> = simplices
        .iter()
        .map(|s| {
            let mut c = vec![s.clone()];
            for &i in word {
                let next = x.face(c.last().expect("nonempty"), i)?;
                c.push(next);
            }
            Ok(c)
        })
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for p in 0..simplices.len() {
        for q in p + 1..simplices.len() {
            let (cp, cq) = (&chains[p], &chains[q]);
            let mut trace = PairTrace::default();
            match (kill_step(cp), kill_step(cq)) {
                (Some(a), Some(b)) if a != b => trace.p_first = Some(a < b),
                _ => {}
            }
            let merge = (1..cp.len()).find(|&k| cp[k] == cq[k]);
            if let (Some(k), Some(r)) = (merge, kill_step(cp)) {
                if r > k {
                    let key = FiberKey { level: n - k + 1, face: word[k - 1], target: cp[k].clone() };
                    let order = assignment
                        .get(&key)
                        .ok_or_else(|| Error::MissingFiberOrder(format!("fiber of d_{} over {}", key.face, x.label(&key.target))))?;
                    let pos = |s: &SimplexRef| order.iter().position(|o| o == s);
                    let p_smaller = pos(&cp[k - 1]) < pos(&cq[k - 1]);
                    trace.merged_kill = Some(((cp[r - 1].clone(), word[r - 1]), p_smaller));
                }
            }
            out.push(trace);
        }
    }
    Ok(out)
}
