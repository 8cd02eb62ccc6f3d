//! Finite pointed simplicial sets given by their nondegenerate simplices.
//!
//! Every simplex is a degeneracy word applied to a nondegenerate simplex, kept
//! in Eilenberg–Zilber normal form `s_{j_k} ... s_{j_1} x` with
//! `j_k > ... > j_1`. Equivalently a simplex of level `n` over a
//! nondegenerate `x` of dimension `d` is a monotone surjection
//! `[n] -> [d]`, written as its value string, e.g. `[00112]` is `s_2 s_0 x`
//! for a 2-simplex `x`. Face and degeneracy maps are computed on that
//! surjection and renormalized.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a nondegenerate simplex; the basepoint is always `0`.
pub type SimplexId = usize;

pub const BASEPOINT: SimplexId = 0;

/// A simplex in normal form. `word` lists the degeneracy indices outermost
/// first and is strictly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimplexRef {
    pub base: SimplexId,
    pub word: Vec<usize>,
}

impl SimplexRef {
    pub fn nondegenerate(base: SimplexId) -> SimplexRef {
        SimplexRef { base, word: Vec::new() }
    }

    pub fn is_basepoint(&self) -> bool {
        self.base == BASEPOINT
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NondegSimplex {
    pub name: String,
    pub dim: usize,
    /// `d_0 .. d_dim`, each a simplex of level `dim - 1`.
    pub faces: Vec<SimplexRef>,
}

/// A simplicial identity `d_i d_j = d_{j-1} d_i` failing on a stored simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityViolation {
    pub simplex: String,
    pub i: usize,
    pub j: usize,
}

impl fmt::Display for IdentityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d_{} d_{} != d_{} d_{} on `{}`", self.i, self.j, self.j - 1, self.i, self.simplex)
    }
}

/// All simplices of one level, in the canonical order: by base id, then by
/// degeneracy word. The basepoint degeneracy comes first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    pub n: usize,
    pub simplices: Vec<SimplexRef>,
    index: HashMap<SimplexRef, usize>,
}

impl Level {
    fn new(n: usize, simplices: Vec<SimplexRef>) -> Level {
        let index = simplices.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        Level { n, simplices, index }
    }

    pub fn position(&self, s: &SimplexRef) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// The simplices other than the basepoint, in level order.
    pub fn non_basepoint(&self) -> &[SimplexRef] {
        &self.simplices[1..]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialSet {
    simplices: Vec<NondegSimplex>,
}

impl SimplicialSet {
    /// Validates the raw data. `simplices[0]` must be the basepoint vertex.
    pub fn new(simplices: Vec<NondegSimplex>) -> Result<SimplicialSet> {
        let invalid = |m: String| Err(Error::InvalidSimplicialSet(m));
        match simplices.first() {
            Some(b) if b.dim == 0 => {}
            _ => return invalid("the basepoint must be a 0-simplex".into()),
        }
        for (k, s) in simplices.iter().enumerate() {
            if simplices[..k].iter().any(|t| t.name == s.name) {
                return invalid(format!("duplicate simplex name `{}`", s.name));
            }
            let expected = if s.dim == 0 { 0 } else { s.dim + 1 };
            if s.faces.len() != expected {
                return invalid(format!("`{}` of dimension {} needs {expected} faces, got {}", s.name, s.dim, s.faces.len()));
            }
            for f in &s.faces {
                let Some(b) = simplices.get(f.base) else {
                    return invalid(format!("face of `{}` refers to unknown simplex {}", s.name, f.base));
                };
                let normal = f.word.windows(2).all(|w| w[0] > w[1]);
                let level = b.dim + f.word.len();
                if !normal || level + 1 != s.dim || f.word.first().is_some_and(|&j| j >= level) {
                    return invalid(format!("face of `{}` is not a normal-form simplex of level {}", s.name, s.dim - 1));
                }
            }
        }
        let x = SimplicialSet { simplices };
        x.validate().map_err(|v| Error::InvalidSimplicialSet(v.to_string()))?;
        Ok(x)
    }

    /// Checks `d_i d_j = d_{j-1} d_i` (`i < j`) on every stored simplex of
    /// dimension at least 2.
    pub fn validate(&self) -> std::result::Result<(), IdentityViolation> {
        for (id, s) in self.simplices.iter().enumerate() {
            if s.dim < 2 {
                continue;
            }
            let x = SimplexRef::nondegenerate(id);
            for j in 1..=s.dim {
                for i in 0..j {
                    let lhs = self.face(&self.face(&x, j).expect("in range"), i).expect("in range");
                    let rhs = self.face(&self.face(&x, i).expect("in range"), j - 1).expect("in range");
                    if lhs != rhs {
                        return Err(IdentityViolation { simplex: s.name.clone(), i, j });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn nondegenerate(&self) -> &[NondegSimplex] {
        &self.simplices
    }

    pub fn simplex(&self, id: SimplexId) -> &NondegSimplex {
        &self.simplices[id]
    }

    pub fn id_of(&self, name: &str) -> Option<SimplexId> {
        self.simplices.iter().position(|s| s.name == name)
    }

    /// Largest dimension of a nondegenerate simplex.
    pub fn dimension(&self) -> usize {
        self.simplices.iter().map(|s| s.dim).max().unwrap_or(0)
    }

    pub fn level_of(&self, s: &SimplexRef) -> usize {
        self.simplices[s.base].dim + s.word.len()
    }

    /// The basepoint at level `n`.
    pub fn basepoint(&self, n: usize) -> SimplexRef {
        SimplexRef { base: BASEPOINT, word: (0..n).rev().collect() }
    }

    /// The monotone surjection `[n] -> [dim base]` of a simplex.
    pub fn pattern(&self, s: &SimplexRef) -> Vec<usize> {
        let mut eta: Vec<usize> = (0..=self.simplices[s.base].dim).collect();
        for &j in s.word.iter().rev() {
            eta.insert(j, eta[j]);
        }
        eta
    }

    /// Inverse of [`SimplicialSet::pattern`].
    pub fn from_pattern(base: SimplexId, eta: &[usize]) -> SimplexRef {
        let word = (0..eta.len().saturating_sub(1)).rev().filter(|&j| eta[j] == eta[j + 1]).collect();
        SimplexRef { base, word }
    }

    /// `d_i s`, in normal form.
    pub fn face(&self, s: &SimplexRef, i: usize) -> Result<SimplexRef> {
        let n = self.level_of(s);
        if n == 0 || i > n {
            return Err(Error::IndexOutOfRange(format!("d_{i} on a simplex of level {n}")));
        }
        let mut eta = self.pattern(s);
        eta.remove(i);
        let d = self.simplices[s.base].dim;
        match (0..=d).find(|v| !eta.contains(v)) {
            None => Ok(SimplicialSet::from_pattern(s.base, &eta)),
            Some(missing) => {
                // eta = delta_missing . rest, so d_i s = rest^*(d_missing x)
                let rest: Vec<usize> = eta.iter().map(|&v| if v > missing { v - 1 } else { v }).collect();
                let face = &self.simplices[s.base].faces[missing];
                let theta = self.pattern(face);
                let composed: Vec<usize> = rest.iter().map(|&v| theta[v]).collect();
                Ok(SimplicialSet::from_pattern(face.base, &composed))
            }
        }
    }

    /// `s_i s`, in normal form.
    pub fn degeneracy(&self, s: &SimplexRef, i: usize) -> Result<SimplexRef> {
        let n = self.level_of(s);
        if i > n {
            return Err(Error::IndexOutOfRange(format!("s_{i} on a simplex of level {n}")));
        }
        let mut eta = self.pattern(s);
        eta.insert(i, eta[i]);
        Ok(SimplicialSet::from_pattern(s.base, &eta))
    }

    /// Applies a word of face indices, first entry first.
    pub fn faces_along(&self, s: &SimplexRef, word: &[usize]) -> Result<SimplexRef> {
        word.iter().try_fold(s.clone(), |acc, &i| self.face(&acc, i))
    }

    /// All simplices of level `n`.
    pub fn level(&self, n: usize) -> Level {
        let mut all = Vec::new();
        for (id, s) in self.simplices.iter().enumerate() {
            if s.dim > n {
                continue;
            }
            let mut words = Vec::new();
            decreasing_words(n, n - s.dim, &mut Vec::new(), &mut words);
            words.sort();
            all.extend(words.into_iter().map(|word| SimplexRef { base: id, word }));
        }
        Level::new(n, all)
    }

    /// Levels `0..=cutoff`.
    pub fn materialize(&self, cutoff: usize) -> Vec<Level> {
        (0..=cutoff).map(|n| self.level(n)).collect()
    }

    /// Human-readable name: the surjection string, subscripted with the base
    /// name unless the base is the only nondegenerate simplex of its dimension.
    pub fn label(&self, s: &SimplexRef) -> String {
        let base = &self.simplices[s.base];
        let eta = self.pattern(s);
        let body: String = if base.dim < 10 {
            eta.iter().map(|v| char::from_digit(*v as u32, 10).expect("digit")).collect()
        } else {
            eta.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
        };
        let unique = self.simplices.iter().filter(|t| t.dim == base.dim).count() == 1;
        if unique && !s.is_basepoint() {
            format!("[{body}]")
        } else {
            format!("[{body}]_{}", base.name)
        }
    }

    /// Normal form of a degeneracy word applied to a nondegenerate simplex,
    /// the word given outermost first (`[1, 0]` is `s_1 s_0 x`).
    pub fn apply_degeneracies(&self, base: SimplexId, word: &[usize]) -> Result<SimplexRef> {
        word.iter().rev().try_fold(SimplexRef::nondegenerate(base), |acc, &j| self.degeneracy(&acc, j))
    }

    /// Whether every nondegenerate simplex of `self` occurs in `other` under
    /// the same name with the same faces.
    pub fn is_subset_of(&self, other: &SimplicialSet) -> std::result::Result<(), String> {
        if self.simplices[0].name != other.simplices[0].name {
            return Err(format!("basepoints differ (`{}` vs `{}`)", self.simplices[0].name, other.simplices[0].name));
        }
        for s in &self.simplices {
            let Some(t) = other.id_of(&s.name).map(|id| other.simplex(id)) else {
                return Err(format!("`{}` is missing", s.name));
            };
            let same_faces = s.dim == t.dim
                && s.faces.iter().zip(&t.faces).all(|(a, b)| {
                    a.word == b.word && self.simplices[a.base].name == other.simplices[b.base].name
                });
            if !same_faces {
                return Err(format!("`{}` has different faces", s.name));
            }
        }
        Ok(())
    }

    // ---- builders ----

    pub fn point() -> SimplicialSet {
        Builder::new("v0").build().expect("valid")
    }

    /// Two vertices `v0` (basepoint) and `v1` joined by `e` with `d_0 e = v1`.
    pub fn interval() -> SimplicialSet {
        let mut b = Builder::new("v0");
        b.simplex("v1", 0, &[]);
        b.simplex("e", 1, &["v1", "v0"]);
        b.build().expect("valid")
    }

    pub fn circle() -> SimplicialSet {
        SimplicialSet::wedge_of_circles(1)
    }

    /// `k` loops `e1 .. ek` at the basepoint (`e` when `k = 1`).
    pub fn wedge_of_circles(k: usize) -> SimplicialSet {
        let mut b = Builder::new("v0");
        for i in 1..=k {
            let name = if k == 1 { "e".to_string() } else { format!("e{i}") };
            b.simplex(&name, 1, &["v0", "v0"]);
        }
        b.build().expect("valid")
    }

    /// One vertex and one 2-simplex whose faces are all the degenerate basepoint.
    pub fn sphere2() -> SimplicialSet {
        let mut b = Builder::new("v0");
        b.simplex("sigma", 2, &["s0 v0", "s0 v0", "s0 v0"]);
        b.build().expect("valid")
    }

    /// A 2-simplex all of whose edges are glued to a single loop `e`.
    pub fn simplex2_boundary_collapsed() -> SimplicialSet {
        let mut b = Builder::new("v0");
        b.simplex("e", 1, &["v0", "v0"]);
        b.simplex("sigma", 2, &["e", "e", "e"]);
        b.build().expect("valid")
    }

    /// The minimal 2-sphere with an extra loop `e` at the basepoint; contains
    /// [`SimplicialSet::circle`] as a sub-simplicial set.
    pub fn sphere2_with_circle() -> SimplicialSet {
        let mut b = Builder::new("v0");
        b.simplex("e", 1, &["v0", "v0"]);
        b.simplex("sigma", 2, &["s0 v0", "s0 v0", "s0 v0"]);
        b.build().expect("valid")
    }

    /// Builder by name, as used for inline references on the command line.
    pub fn named(name: &str) -> Option<SimplicialSet> {
        Some(match name {
            "point" => SimplicialSet::point(),
            "interval" => SimplicialSet::interval(),
            "circle" => SimplicialSet::circle(),
            "sphere2" => SimplicialSet::sphere2(),
            "simplex2-boundary-collapsed" => SimplicialSet::simplex2_boundary_collapsed(),
            "sphere2-with-circle" => SimplicialSet::sphere2_with_circle(),
            _ => {
                let k = name.strip_prefix("wedge-")?.parse().ok()?;
                SimplicialSet::wedge_of_circles(k)
            }
        })
    }
}

fn decreasing_words(n: usize, len: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if prefix.len() == len {
        out.push(prefix.clone());
        return;
    }
    let upper = prefix.last().copied().unwrap_or(n);
    let remaining = len - prefix.len();
    for j in (remaining - 1..upper).rev() {
        prefix.push(j);
        decreasing_words(n, len, prefix, out);
        prefix.pop();
    }
}

/// Incremental construction by name. Faces are written like `v0` or
/// `s1 s0 v0` (outermost degeneracy first) and may refer to simplices
/// declared later.
#[derive(Clone, Debug, Default)]
pub struct Builder {
    entries: Vec<(String, usize, Vec<String>)>,
}

impl Builder {
    pub fn new(basepoint: &str) -> Builder {
        Builder { entries: vec![(basepoint.to_string(), 0, Vec::new())] }
    }

    pub fn simplex(&mut self, name: &str, dim: usize, faces: &[&str]) -> &mut Builder {
        self.entries.push((name.to_string(), dim, faces.iter().map(|f| f.to_string()).collect()));
        self
    }

    pub fn build(&self) -> Result<SimplicialSet> {
        let ids: HashMap<&str, usize> =
            self.entries.iter().enumerate().map(|(i, (n, _, _))| (n.as_str(), i)).collect();
        // a temporary set without faces lets us normalize face words
        let skeleton = SimplicialSet {
            simplices: self
                .entries
                .iter()
                .map(|(name, dim, _)| NondegSimplex { name: name.clone(), dim: *dim, faces: Vec::new() })
                .collect(),
        };
        let mut simplices = Vec::new();
        for (name, dim, faces) in &self.entries {
            let mut refs = Vec::new();
            for f in faces {
                let tokens: Vec<&str> = f.split_whitespace().collect();
                let Some((target, degs)) = tokens.split_last() else {
                    return Err(Error::InvalidSimplicialSet(format!("empty face in `{name}`")));
                };
                let Some(&base) = ids.get(target) else {
                    return Err(Error::InvalidSimplicialSet(format!("unknown simplex `{target}` in faces of `{name}`")));
                };
                let word = degs
                    .iter()
                    .map(|t| {
                        t.strip_prefix('s').and_then(|j| j.parse::<usize>().ok()).ok_or_else(|| {
                            Error::InvalidSimplicialSet(format!("bad degeneracy `{t}` in faces of `{name}`"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                let r = skeleton.apply_degeneracies(base, &word)?;
                refs.push(r);
            }
            simplices.push(NondegSimplex { name: name.clone(), dim: *dim, faces: refs });
        }
        SimplicialSet::new(simplices)
    }
}
