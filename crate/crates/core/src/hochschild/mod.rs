//! Higher Hochschild (co)chain complexes of a pointed simplicial set.
//!
//! Degree `n` is the tensor power of the algebra over the non-basepoint
//! simplices of `X_n`, with the module in front. Face maps act through the
//! Loday functor (chains) or its hom-dual (cochains). Within a fiber of a
//! face map the algebra elements are multiplied with the larger simplex of
//! the fiber order on the left; that is the convention under which the
//! circle reproduces the textbook complex with the textbook actions.

mod classical;
mod functor;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraSpec;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::multimodule::ModuleSpec;
use crate::ordering::{
    check_nncmo, classify_actions_with, classify_nncmo, ActionClassReport, NncmoResult, OrderingAssignment,
};
use crate::simplicial::{Level, SimplexRef, SimplicialSet};

pub use classical::classical_complex;
pub use functor::{all_images, fibers_of, hom_functor_on_morphism, loday_on_morphism, PointedMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Chain,
    Cochain,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Chain => "chain",
            Variant::Cochain => "cochain",
        })
    }
}

/// A truncated (co)chain complex with its Betti numbers.
///
/// For chains `differentials[n]` is `δ_n: C_n -> C_{n-1}` (`δ_0` has no
/// rows); for cochains it is `δ^n: C^n -> C^{n+1}` for `n < max_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    pub variant: Variant,
    pub dims: Vec<usize>,
    pub differentials: Vec<Matrix>,
    pub ranks: Vec<usize>,
    pub betti: Vec<usize>,
    pub caveats: Vec<String>,
}

impl Complex {
    pub fn new(variant: Variant, dims: Vec<usize>, differentials: Vec<Matrix>) -> Complex {
        let ranks: Vec<usize> = differentials.iter().map(Matrix::rank).collect();
        let top = dims.len() - 1;
        let betti = (0..=top)
            .map(|n| {
                let (outgoing, incoming) = match variant {
                    Variant::Chain => (ranks[n], ranks.get(n + 1).copied().unwrap_or(0)),
                    Variant::Cochain => (ranks.get(n).copied().unwrap_or(0), if n == 0 { 0 } else { ranks[n - 1] }),
                };
                dims[n] - outgoing - incoming
            })
            .collect();
        let caveats = vec![format!(
            "degree {top} is the truncation degree: its differential {} is not computed, so the value is an upper bound (needs max_degree+1)",
            match variant {
                Variant::Chain => "from degree top+1",
                Variant::Cochain => "into degree top+1",
            }
        )];
        Complex { variant, dims, differentials, ranks, betti, caveats }
    }

    pub fn max_degree(&self) -> usize {
        self.dims.len() - 1
    }

    /// The first degree where two consecutive differentials fail to compose
    /// to zero.
    pub fn check_squares(&self) -> std::result::Result<(), usize> {
        for n in 1..self.differentials.len() {
            let (a, b) = (&self.differentials[n - 1], &self.differentials[n]);
            let product = match self.variant {
                Variant::Chain => a.mul(b),
                Variant::Cochain => b.mul(a),
            };
            if !product.map(|p| p.is_zero()).unwrap_or(false) {
                return Err(n);
            }
        }
        Ok(())
    }
}

/// `β_n` (or `β^n`) of a computed complex.
pub fn betti(complex: &Complex, n: usize) -> Result<usize> {
    complex.betti.get(n).copied().ok_or(Error::DegreeOutOfRange(n))
}

/// Everything needed to assemble a complex.
#[derive(Clone, Debug)]
pub struct ComplexSpec {
    pub x: SimplicialSet,
    pub module: ModuleSpec,
    /// Required when the algebra is noncommutative.
    pub assignment: Option<OrderingAssignment>,
    /// Action classes, typed for this spec's variant, covering every level
    /// up to `max_degree`.
    pub classes: ActionClassReport,
    /// Class id to action name.
    pub action_map: BTreeMap<usize, String>,
    pub variant: Variant,
    pub normalized: bool,
    pub max_degree: usize,
}

impl ComplexSpec {
    /// Fills in the ordering from [`classify_nncmo`] when one exists and maps
    /// each action class to the first compatible action of the module.
    pub fn auto(x: &SimplicialSet, module: &ModuleSpec, variant: Variant, max_degree: usize) -> Result<ComplexSpec> {
        let cutoff = class_cutoff(max_degree);
        let assignment = match classify_nncmo(x, cutoff)? {
            NncmoResult::Admits(a) => Some(a),
            NncmoResult::Fails(_) => None,
        };
        let classes = action_classes(x, cutoff, assignment.as_ref(), variant)?;
        let action_map = module.default_assignment(&classes)?;
        Ok(ComplexSpec {
            x: x.clone(),
            module: module.clone(),
            assignment,
            classes,
            action_map,
            variant,
            normalized: false,
            max_degree,
        })
    }

    pub fn algebra(&self) -> &AlgebraSpec {
        self.module.algebra()
    }

}

fn class_cutoff(max_degree: usize) -> usize {
    max_degree.max(2)
}

/// Action classes of `x` with the typing appropriate to the variant.
pub fn action_classes(
    x: &SimplicialSet,
    cutoff: usize,
    assignment: Option<&OrderingAssignment>,
    variant: Variant,
) -> Result<ActionClassReport> {
    let report = classify_actions_with(x, cutoff, assignment)?;
    Ok(match variant {
        Variant::Cochain => report,
        Variant::Chain => report.mirrored(),
    })
}

/// Builds the pointed maps of face and degeneracy operators of a spec.
struct Assembler<'a> {
    spec: &'a ComplexSpec,
    levels: Vec<Level>,
    site_action: HashMap<(SimplexRef, usize), String>,
}

impl<'a> Assembler<'a> {
    fn new(spec: &'a ComplexSpec, top: usize) -> Result<Assembler<'a>> {
        let classes = &spec.classes;
        if classes.cutoff < top {
            return Err(Error::DegreeOutOfRange(top));
        }
        spec.module.validate_assignment(classes, &spec.action_map)?;
        if !spec.algebra().is_commutative() {
            // two classes sharing one action would need that action to commute with itself
            let mut seen = BTreeMap::new();
            for (id, name) in &spec.action_map {
                if let Some(other) = seen.insert(name, id) {
                    return Err(Error::InvalidAssignment(format!(
                        "classes {other} and {id} both use action `{name}`; with a noncommutative algebra each class needs its own action"
                    )));
                }
            }
        }
        let mut site_action = HashMap::new();
        for class in &classes.classes {
            let Some(name) = spec.action_map.get(&class.id) else {
                return Err(Error::InvalidAssignment(format!("action class {} has no action", class.id)));
            };
            for s in &class.sites {
                site_action.insert((s.simplex.clone(), s.face), name.clone());
            }
        }
        Ok(Assembler { spec, levels: spec.x.materialize(top + 1), site_action })
    }

    fn factors(&self, n: usize) -> usize {
        self.levels[n].simplices.len() - 1
    }

    fn dim(&self, n: usize) -> usize {
        let d = self.spec.algebra().dim();
        self.spec.module.dim() * d.pow(self.factors(n) as u32)
    }

    /// `d_i: X_n -> X_{n-1}` as a pointed map on non-basepoint simplices.
    fn face(&self, n: usize, i: usize) -> Result<PointedMap> {
        let x = &self.spec.x;
        let source = self.levels[n].non_basepoint();
        let below = &self.levels[n - 1];
        let mut images = Vec::with_capacity(source.len());
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); self.factors(n - 1)];
        let mut basepoint = Vec::new();
        for (k, s) in source.iter().enumerate() {
            let t = x.face(s, i)?;
            if t.is_basepoint() {
                images.push(0);
                let action = self.site_action.get(&(s.clone(), i)).ok_or_else(|| {
                    Error::InvalidAssignment(format!("no action for d_{i} on {}", x.label(s)))
                })?;
                basepoint.push((k + 1, action.clone()));
            } else {
                let q = below.position(&t).expect("face lies in the level below");
                images.push(q);
                members[q - 1].push(k + 1);
            }
        }
        let mut fibers = Vec::with_capacity(members.len());
        for (q, m) in members.into_iter().enumerate() {
            fibers.push(self.fiber_order(n, i, &below.simplices[q + 1], m)?);
        }
        PointedMap::new(below.simplices.len() - 1, images, fibers, basepoint)
    }

    /// Larger simplex on the left.
    fn fiber_order(&self, n: usize, i: usize, target: &SimplexRef, mut members: Vec<usize>) -> Result<Vec<usize>> {
        match &self.spec.assignment {
            Some(a) if members.len() > 1 => {
                let key = crate::ordering::FiberKey { level: n, face: i, target: target.clone() };
                let order = a.get(&key).ok_or_else(|| {
                    Error::MissingFiberOrder(format!("fiber of d_{i} over {} at level {n}", self.spec.x.label(target)))
                })?;
                let level = &self.levels[n];
                let mut out: Vec<usize> = order.iter().rev().map(|s| level.position(s).unwrap_or(usize::MAX)).collect();
                let mut check = out.clone();
                check.sort_unstable();
                if check != members {
                    return Err(Error::MissingFiberOrder(format!(
                        "order on the fiber of d_{i} over {} is not a permutation of it",
                        self.spec.x.label(target)
                    )));
                }
                out.shrink_to_fit();
                Ok(out)
            }
            _ => {
                members.reverse();
                Ok(members)
            }
        }
    }

    /// `s_j: X_n -> X_{n+1}`.
    fn degeneracy(&self, n: usize, j: usize) -> Result<PointedMap> {
        let above = &self.levels[n + 1];
        let mut images = Vec::new();
        for s in self.levels[n].non_basepoint() {
            images.push(above.position(&self.spec.x.degeneracy(s, j)?).expect("degeneracy lies in the level above"));
        }
        let mut fibers = vec![Vec::new(); self.factors(n + 1)];
        for (k, &q) in images.iter().enumerate() {
            fibers[q - 1].push(k + 1);
        }
        PointedMap::new(self.factors(n + 1), images, fibers, Vec::new())
    }

    fn apply(&self, map: &PointedMap) -> Result<Matrix> {
        match self.spec.variant {
            Variant::Chain => loday_on_morphism(&self.spec.module, map),
            Variant::Cochain => hom_functor_on_morphism(&self.spec.module, map),
        }
    }

    /// `Σ (-1)^i` of the face operators out of level `n`.
    fn alternating_sum(&self, n: usize) -> Result<Matrix> {
        let mut total: Option<Matrix> = None;
        for i in 0..=n {
            let f = self.apply(&self.face(n, i)?)?;
            total = Some(match total {
                None => f,
                Some(t) if i % 2 == 0 => t.add(&f)?,
                Some(t) => t.sub(&f)?,
            });
        }
        Ok(total.expect("at least one face"))
    }

    /// Tensor basis indices of degree `n` not in the image of any
    /// degeneracy; needs the unit to be a basis element.
    fn nondegenerate_indices(&self, n: usize) -> Result<Vec<usize>> {
        let unit = self.spec.algebra().unit_basis_index().ok_or_else(|| {
            Error::InvalidAlgebra("normalization needs the unit to be a basis element".into())
        })?;
        let d = self.spec.algebra().dim();
        let k = self.factors(n);
        let mut images: Vec<Vec<bool>> = Vec::new();
        if n > 0 {
            for j in 0..n {
                let map = self.degeneracy(n - 1, j)?;
                let mut hit = vec![false; k];
                for &q in &map.images {
                    hit[q - 1] = true;
                }
                images.push(hit);
            }
        }
        let stride = d.pow(k as u32);
        let mut keep = Vec::new();
        for idx in 0..self.dim(n) {
            let mut t = idx % stride;
            let mut alpha = Vec::with_capacity(k);
            for _ in 0..k {
                alpha.push(t % d);
                t /= d;
            }
            let degenerate = images.iter().any(|hit| (0..k).all(|p| hit[p] || alpha[p] == unit));
            if !degenerate {
                keep.push(idx);
            }
        }
        Ok(keep)
    }
}

/// Refuses noncommutative coefficients unless the spec carries an ordering
/// that passes [`check_nncmo`].
fn check_orderings(spec: &ComplexSpec) -> Result<()> {
    if spec.algebra().is_commutative() {
        return Ok(());
    }
    let top = spec.max_degree;
    match &spec.assignment {
        None => {
            let witness = match classify_nncmo(&spec.x, class_cutoff(top))? {
                NncmoResult::Fails(w) => Some(Box::new(w)),
                NncmoResult::Admits(_) => None,
            };
            Err(Error::Refused {
                reason: "a noncommutative algebra needs a consistent ordering of the face-map fibers, \
                         and none was supplied"
                    .into(),
                witness,
            })
        }
        Some(a) => {
            a.check_coverage(&spec.x)?;
            match check_nncmo(&spec.x, a, top.min(a.cutoff()))? {
                Some(w) => Err(Error::Refused {
                    reason: "the supplied ordering is not consistent".into(),
                    witness: Some(Box::new(w)),
                }),
                None => Ok(()),
            }
        }
    }
}

/// Assembles the complex of a spec (normalized if the spec asks for it).
pub fn build_complex(spec: &ComplexSpec) -> Result<Complex> {
    check_orderings(spec)?;
    let asm = Assembler::new(spec, spec.max_degree)?;
    let field = spec.algebra().field();
    let top = spec.max_degree;
    let keep: Option<Vec<Vec<usize>>> = if spec.normalized {
        Some((0..=top).map(|n| asm.nondegenerate_indices(n)).collect::<Result<_>>()?)
    } else {
        None
    };
    let dims: Vec<usize> = match &keep {
        Some(k) => k.iter().map(Vec::len).collect(),
        None => (0..=top).map(|n| asm.dim(n)).collect(),
    };
    let restrict = |m: Matrix, rows: usize, cols: usize| match &keep {
        Some(k) => m.submatrix(&k[rows], &k[cols]),
        None => m,
    };
    let mut differentials = Vec::new();
    match spec.variant {
        Variant::Chain => {
            differentials.push(Matrix::zeros(field, 0, dims[0]));
            for n in 1..=top {
                differentials.push(restrict(asm.alternating_sum(n)?, n - 1, n));
            }
        }
        Variant::Cochain => {
            for n in 0..top {
                differentials.push(restrict(asm.alternating_sum(n + 1)?, n + 1, n));
            }
        }
    }
    let mut complex = Complex::new(spec.variant, dims, differentials);
    if spec.normalized {
        complex.caveats.push("normalized: degenerate tensors removed".into());
    }
    Ok(complex)
}

/// The normalized complex of a spec, whatever its `normalized` flag says.
pub fn normalized_complex(spec: &ComplexSpec) -> Result<Complex> {
    let mut s = spec.clone();
    s.normalized = true;
    build_complex(&s)
}

/// A (co)simplicial identity that fails on the assembled operators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityFailure {
    pub level: usize,
    pub identity: String,
}

impl fmt::Display for IdentityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails on level {}", self.identity, self.level)
    }
}

#[derive(Clone, Copy, Debug)]
enum Op {
    D(usize),
    S(usize),
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Op::D(i) => write!(f, "d{i}"),
            Op::S(j) => write!(f, "s{j}"),
        }
    }
}

fn word_name(w: &[Op]) -> String {
    if w.is_empty() {
        return "id".into();
    }
    w.iter().rev().map(ToString::to_string).collect()
}

/// All simplicial identities between words of length two starting at level
/// `n`, as pairs of words in application order (`[]` is the identity).
fn identities(n: usize, cutoff: usize) -> Vec<(Vec<Op>, Vec<Op>)> {
    let mut out = Vec::new();
    if n >= 2 {
        for j in 1..=n {
            for i in 0..j {
                out.push((vec![Op::D(j), Op::D(i)], vec![Op::D(i), Op::D(j - 1)]));
            }
        }
    }
    if n < cutoff {
        for j in 0..=n {
            for i in 0..=n + 1 {
                let lhs = vec![Op::S(j), Op::D(i)];
                let rhs = if i < j {
                    if n == 0 {
                        continue;
                    }
                    vec![Op::D(i), Op::S(j - 1)]
                } else if i == j || i == j + 1 {
                    vec![]
                } else {
                    if n == 0 {
                        continue;
                    }
                    vec![Op::D(i - 1), Op::S(j)]
                };
                out.push((lhs, rhs));
            }
        }
    }
    if n + 1 < cutoff {
        for j in 0..=n {
            for i in 0..=j {
                out.push((vec![Op::S(j), Op::S(i)], vec![Op::S(i), Op::S(j + 1)]));
            }
        }
    }
    out
}

/// Verifies every face/degeneracy identity on the operators of `spec` up to
/// level `cutoff`, without checking the ordering first. Returns the first
/// failure.
pub fn cosimplicial_check(spec: &ComplexSpec, cutoff: usize) -> Result<Option<IdentityFailure>> {
    let asm = Assembler::new(spec, cutoff)?;
    let field = spec.algebra().field();
    let mut cache: HashMap<(usize, bool, usize), Matrix> = HashMap::new();
    let mut operator = |level: usize, op: Op| -> Result<(Matrix, usize)> {
        let (key, next) = match op {
            Op::D(i) => ((level, true, i), level - 1),
            Op::S(j) => ((level, false, j), level + 1),
        };
        if let Some(m) = cache.get(&key) {
            return Ok((m.clone(), next));
        }
        let map = match op {
            Op::D(i) => asm.face(level, i)?,
            Op::S(j) => asm.degeneracy(level, j)?,
        };
        let m = asm.apply(&map)?;
        cache.insert(key, m.clone());
        Ok((m, next))
    };
    for n in 0..=cutoff {
        for (lhs, rhs) in identities(n, cutoff) {
            let mut sides = Vec::new();
            for w in [&lhs, &rhs] {
                let mut level = n;
                let mut acc = Matrix::identity(field, asm.dim(n));
                for &op in w {
                    let (m, next) = operator(level, op)?;
                    acc = match spec.variant {
                        Variant::Chain => m.mul(&acc)?,
                        Variant::Cochain => acc.mul(&m)?,
                    };
                    level = next;
                }
                sides.push(acc);
            }
            if sides[0] != sides[1] {
                return Ok(Some(IdentityFailure {
                    level: n,
                    identity: format!("{} = {}", word_name(&lhs), word_name(&rhs)),
                }));
            }
        }
    }
    Ok(None)
}

/// What a pair `X ⊆ Y` allows for the two algebras `A` (over `Y`) and `B`
/// (over `X`, mapping to `A`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairConstraint {
    BothNoncommutative,
    ANoncommutativeBCentral,
    BothCommutative,
}

impl fmt::Display for PairConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairConstraint::BothNoncommutative => "A and B may both be noncommutative",
            PairConstraint::ANoncommutativeBCentral => "B must be commutative with image in the center of A",
            PairConstraint::BothCommutative => "A and B must both be commutative",
        })
    }
}

pub fn pair_constraints(x: &SimplicialSet, y: &SimplicialSet) -> Result<PairConstraint> {
    x.is_subset_of(y).map_err(Error::NotSubset)?;
    Ok(if y.dimension() <= 1 {
        PairConstraint::BothNoncommutative
    } else if x.dimension() <= 1 {
        PairConstraint::ANoncommutativeBCentral
    } else {
        PairConstraint::BothCommutative
    })
}
