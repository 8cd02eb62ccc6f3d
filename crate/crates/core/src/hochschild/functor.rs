//! The Loday functor and its hom-dual on pointed maps `m₊ -> n₊`.
//!
//! Tensor bases are mixed radix with the module index most significant and
//! element `1` of the pointed set least significant:
//! `index = m·d^k + Σ_p α_p·d^(p-1)` over elements `p = 1..=k`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::multimodule::{ActionTag, ModuleSpec};
use crate::scalar::Scalar;

/// A map of pointed sets `{0..source} -> {0..target}` fixing `0`, with the
/// extra data the functors need: the multiplication order of each fiber and
/// the action applied to each element sent to `0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointedMap {
    pub source: usize,
    pub target: usize,
    /// `images[j - 1]` is the image of element `j`.
    pub images: Vec<usize>,
    /// `fibers[i - 1]` lists the preimages of `i`, leftmost factor first.
    pub fibers: Vec<Vec<usize>>,
    /// Preimages of `0` with the name of the action each one uses, in the
    /// order the actions are applied (innermost first).
    pub basepoint: Vec<(usize, String)>,
}

impl PointedMap {
    pub fn new(
        target: usize,
        images: Vec<usize>,
        fibers: Vec<Vec<usize>>,
        basepoint: Vec<(usize, String)>,
    ) -> Result<PointedMap> {
        let map = PointedMap { source: images.len(), target, images, fibers, basepoint };
        map.check()?;
        Ok(map)
    }

    /// Fibers in increasing order; every element sent to `0` uses `action`,
    /// applied in increasing order.
    pub fn with_natural_orders(target: usize, images: Vec<usize>, action: &str) -> Result<PointedMap> {
        let mut fibers = vec![Vec::new(); target];
        let mut basepoint = Vec::new();
        for (k, &i) in images.iter().enumerate() {
            match i {
                0 => basepoint.push((k + 1, action.to_string())),
                i if i <= target => fibers[i - 1].push(k + 1),
                _ => return Err(Error::IndexOutOfRange(format!("image {i} of {} exceeds {target}", k + 1))),
            }
        }
        PointedMap::new(target, images, fibers, basepoint)
    }

    pub fn identity(n: usize) -> PointedMap {
        PointedMap {
            source: n,
            target: n,
            images: (1..=n).collect(),
            fibers: (1..=n).map(|j| vec![j]).collect(),
            basepoint: Vec::new(),
        }
    }

    fn check(&self) -> Result<()> {
        let bad = |m: String| Err(Error::MissingFiberOrder(m));
        if self.fibers.len() != self.target {
            return bad(format!("{} fiber orders given for a target of size {}", self.fibers.len(), self.target));
        }
        for (k, &i) in self.images.iter().enumerate() {
            let j = k + 1;
            if i > self.target {
                return Err(Error::IndexOutOfRange(format!("image {i} of {j} exceeds {}", self.target)));
            }
            let listed = if i == 0 {
                self.basepoint.iter().filter(|(e, _)| *e == j).count()
            } else {
                self.fibers[i - 1].iter().filter(|&&e| e == j).count()
            };
            if listed != 1 {
                return bad(format!("element {j} must appear exactly once in the order of its fiber over {i}"));
            }
        }
        let total = self.fibers.iter().map(Vec::len).sum::<usize>() + self.basepoint.len();
        if total != self.source {
            return bad("fiber orders list elements outside their fibers".into());
        }
        Ok(())
    }

    /// `other ∘ self` with the data [`loday_on_morphism`] needs: fibers
    /// concatenated along `other`'s orders, actions of `self` first.
    pub fn then_loday(&self, other: &PointedMap, module: &ModuleSpec) -> Result<PointedMap> {
        let (fibers, expanded) = self.compose_parts(other, module)?;
        let basepoint = self.basepoint.iter().cloned().chain(expanded).collect();
        PointedMap::new(other.target, self.composite_images(other), fibers, basepoint)
    }

    /// `other ∘ self` with the data [`hom_functor_on_morphism`] needs: the
    /// hom functor is contravariant, so `other`'s actions come first.
    pub fn then_hom(&self, other: &PointedMap, module: &ModuleSpec) -> Result<PointedMap> {
        let (fibers, expanded) = self.compose_parts(other, module)?;
        let basepoint = expanded.into_iter().chain(self.basepoint.iter().cloned()).collect();
        PointedMap::new(other.target, self.composite_images(other), fibers, basepoint)
    }

    fn composite_images(&self, other: &PointedMap) -> Vec<usize> {
        self.images.iter().map(|&i| if i == 0 { 0 } else { other.images[i - 1] }).collect()
    }

    fn compose_parts(&self, other: &PointedMap, module: &ModuleSpec) -> Result<(Vec<Vec<usize>>, Vec<(usize, String)>)> {
        if self.target != other.source {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose a map into {}₊ with a map out of {}₊",
                self.target, other.source
            )));
        }
        let fibers = other
            .fibers
            .iter()
            .map(|f| f.iter().flat_map(|&i| self.fibers[i - 1].iter().copied()).collect())
            .collect();
        let mut expanded = Vec::new();
        for (i, name) in &other.basepoint {
            let action = module
                .action(name)
                .ok_or_else(|| Error::InvalidAssignment(format!("unknown action `{name}`")))?;
            let fiber = &self.fibers[i - 1];
            // op(a b) = op(a) op(b) for left actions, so the last factor acts first
            let ordered: Vec<usize> = match action.tag {
                ActionTag::Left => fiber.iter().rev().copied().collect(),
                ActionTag::Right | ActionTag::LR => fiber.clone(),
            };
            expanded.extend(ordered.into_iter().map(|j| (j, name.clone())));
        }
        Ok((fibers, expanded))
    }
}

fn tensor_index(module_index: usize, alpha: &[usize], d: usize) -> usize {
    alpha.iter().rev().fold(module_index, |acc, &a| acc * d + a)
}

/// Enumerates `(m', α, outputs)` where `outputs` lists `(m, β, c)` with
/// `c = (Λ(α) e_m')_m · [β-coefficient of the fiber products of α]`.
fn for_each_image(
    module: &ModuleSpec,
    map: &PointedMap,
    mut visit: impl FnMut(usize, &[usize], &[(usize, usize, Scalar)]),
) -> Result<()> {
    let algebra = module.algebra();
    let field = algebra.field();
    let d = algebra.dim();
    let mut actions = Vec::with_capacity(map.basepoint.len());
    for (j, name) in &map.basepoint {
        let action = module
            .action(name)
            .ok_or_else(|| Error::InvalidAssignment(format!("unknown action `{name}`")))?;
        actions.push((*j, action));
    }
    let unit: Vec<(usize, Scalar)> =
        algebra.unit().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect();

    let total = d.pow(map.source as u32);
    let mut alpha = vec![0usize; map.source];
    let mut out = Vec::new();
    for _ in 0..total {
        // products over each target fiber, as sparse vectors
        let mut factors: Vec<Vec<(usize, Scalar)>> = Vec::with_capacity(map.target);
        for fiber in &map.fibers {
            let mut acc = unit.clone();
            if let Some((&first, rest)) = fiber.split_first() {
                acc = vec![(alpha[first - 1], field.one())];
                for &j in rest {
                    let mut dense = vec![field.zero(); d];
                    for (k, c) in &acc {
                        for (l, p) in algebra.product_of_basis(*k, alpha[j - 1]).iter().enumerate() {
                            if !p.is_zero() {
                                dense[l] = &dense[l] + &(c * p);
                            }
                        }
                    }
                    acc = dense.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
                }
            }
            factors.push(acc);
        }
        // expand the tensor product of the factors
        let mut tensors: Vec<(Vec<usize>, Scalar)> = vec![(Vec::with_capacity(map.target), field.one())];
        for f in &factors {
            let mut next = Vec::with_capacity(tensors.len() * f.len());
            for (beta, c) in &tensors {
                for (k, e) in f {
                    let mut b = beta.clone();
                    b.push(*k);
                    next.push((b, c * e));
                }
            }
            tensors = next;
        }
        for m_in in 0..module.dim() {
            let mut v = vec![field.zero(); module.dim()];
            v[m_in] = field.one();
            for (j, action) in &actions {
                v = action.operators[alpha[j - 1]].apply(&v)?;
            }
            out.clear();
            for (m_out, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (beta, e) in &tensors {
                    out.push((m_out, tensor_index(0, beta, d), c * e));
                }
            }
            visit(m_in, &alpha, &out);
        }
        // next α, element 1 fastest
        for a in alpha.iter_mut() {
            *a += 1;
            if *a < d {
                break;
            }
            *a = 0;
        }
    }
    Ok(())
}

/// `L(A,M)(φ)`: `M ⊗ A^{⊗source} -> M ⊗ A^{⊗target}`.
pub fn loday_on_morphism(module: &ModuleSpec, map: &PointedMap) -> Result<Matrix> {
    map.check()?;
    let d = module.algebra().dim();
    let field = module.algebra().field();
    let (rows, cols) = (module.dim() * d.pow(map.target as u32), module.dim() * d.pow(map.source as u32));
    let mut out = Matrix::zeros(field, rows, cols);
    let target_stride = d.pow(map.target as u32);
    for_each_image(module, map, |m_in, alpha, images| {
        let col = tensor_index(m_in, alpha, d);
        for (m_out, beta, c) in images {
            out.add_at(m_out * target_stride + beta, col, c);
        }
    })?;
    Ok(out)
}

/// `H(A,M)(φ)`: `Hom(A^{⊗target}, M) -> Hom(A^{⊗source}, M)` in the basis
/// dual to the tensor basis, `(Hφ f)(a) = b_0 · f(b_1 ⊗ … ⊗ b_target)`.
pub fn hom_functor_on_morphism(module: &ModuleSpec, map: &PointedMap) -> Result<Matrix> {
    map.check()?;
    let d = module.algebra().dim();
    let field = module.algebra().field();
    let (rows, cols) = (module.dim() * d.pow(map.source as u32), module.dim() * d.pow(map.target as u32));
    let mut out = Matrix::zeros(field, rows, cols);
    let target_stride = d.pow(map.target as u32);
    for_each_image(module, map, |m_in, alpha, images| {
        for (m_out, beta, c) in images {
            out.add_at(tensor_index(*m_out, alpha, d), m_in * target_stride + beta, c);
        }
    })?;
    Ok(out)
}

/// Every pointed map `m₊ -> n₊` with fibers in increasing order.
pub fn all_images(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|v: Vec<usize>| {
                (0..=n).map(move |i| {
                    let mut w = v.clone();
                    w.push(i);
                    w
                })
            })
            .collect();
    }
    out
}

/// Groups elements by image, keyed by target element (including `0`).
pub fn fibers_of(images: &[usize]) -> BTreeMap<usize, Vec<usize>> {
    let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (k, &i) in images.iter().enumerate() {
        out.entry(i).or_default().push(k + 1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraSpec;
    use crate::scalar::Field;

    fn upper() -> ModuleSpec {
        ModuleSpec::regular_bimodule(&AlgebraSpec::upper_tri(Field::Rationals, 2).unwrap()).unwrap()
    }

    #[test]
    fn identity_goes_to_identity() {
        let m = upper();
        for n in 0..3 {
            let id = Matrix::identity(Field::Rationals, 3 * 3usize.pow(n as u32));
            assert_eq!(loday_on_morphism(&m, &PointedMap::identity(n)).unwrap(), id);
            assert_eq!(hom_functor_on_morphism(&m, &PointedMap::identity(n)).unwrap(), id);
        }
    }

    #[test]
    fn merging_two_factors_multiplies_in_fiber_order() {
        let m = upper();
        let alg = m.algebra().clone();
        let phi = PointedMap::new(1, vec![1, 1], vec![vec![1, 2]], vec![]).unwrap();
        let l = loday_on_morphism(&m, &phi).unwrap();
        // m ⊗ a1 ⊗ a2 with a1 = e11 (index 0), a2 = e12 (index 1): a1 a2 = e12
        let d = alg.dim();
        for (a1, a2) in [(0, 1), (1, 2), (1, 0), (2, 2)] {
            let col = tensor_index(0, &[a1, a2], d);
            let prod = alg.product_of_basis(a1, a2);
            for b in 0..d {
                assert_eq!(l.get(b, col), prod[b]);
            }
        }
    }

    #[test]
    fn killing_a_factor_applies_its_action() {
        let m = upper();
        let alg = m.algebra().clone();
        let phi = PointedMap::new(0, vec![0], vec![], vec![(1, "left".into())]).unwrap();
        let l = loday_on_morphism(&m, &phi).unwrap();
        // m ⊗ a -> a m
        for a in 0..3 {
            for mi in 0..3 {
                let prod = alg.product_of_basis(a, mi);
                for r in 0..3 {
                    assert_eq!(l.get(r, tensor_index(mi, &[a], 3)), prod[r]);
                }
            }
        }
    }

    #[test]
    fn empty_fibers_insert_the_unit() {
        let m = upper();
        let phi = PointedMap::new(1, vec![], vec![vec![]], vec![]).unwrap();
        let l = loday_on_morphism(&m, &phi).unwrap();
        // unit of upper_tri(2) is e11 + e22
        assert_eq!(l.nnz(), 3 * 2);
    }

    #[test]
    fn inconsistent_orders_are_rejected() {
        assert!(PointedMap::new(1, vec![1, 1], vec![vec![1]], vec![]).is_err());
        assert!(PointedMap::new(1, vec![0, 1], vec![vec![2]], vec![]).is_err());
        assert!(PointedMap::new(1, vec![1], vec![vec![1, 1]], vec![]).is_err());
    }
}
