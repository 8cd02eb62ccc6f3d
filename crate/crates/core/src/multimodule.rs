//! Multimodules: a vector space with several commuting named actions of an
//! algebra, each tagged left, right or lr.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraSpec;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ordering::{ActionClassReport, ClassType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ActionTag {
    Left,
    Right,
    #[serde(rename = "lr")]
    LR,
}

impl fmt::Display for ActionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ActionTag::Left => "left",
            ActionTag::Right => "right",
            ActionTag::LR => "lr",
        })
    }
}

/// One named action. `operators[i]` is the matrix of the action of the basis
/// element `e_i`, applied to column vectors. Right actions use the same
/// orientation (`m -> m e_i`) and compose in reverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Action {
    pub name: String,
    pub tag: ActionTag,
    pub operators: Vec<Matrix>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    Unital,
    LeftComposition,
    RightComposition,
    Commutation,
}

/// The first failing axiom found by [`ModuleSpec::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleViolation {
    pub axiom: Axiom,
    pub action: String,
    pub other_action: Option<String>,
    pub basis: (usize, usize),
}

impl fmt::Display for ModuleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j) = self.basis;
        match (&self.axiom, &self.other_action) {
            (Axiom::Unital, _) => write!(f, "action `{}` is not unital", self.action),
            (Axiom::LeftComposition, _) => {
                write!(f, "action `{}` fails op(e{i})op(e{j}) = op(e{i}e{j})", self.action)
            }
            (Axiom::RightComposition, _) => {
                write!(f, "action `{}` fails op(e{i})op(e{j}) = op(e{j}e{i})", self.action)
            }
            (Axiom::Commutation, other) => write!(
                f,
                "actions `{}`(e{i}) and `{}`(e{j}) do not commute",
                self.action,
                other.as_deref().unwrap_or("?")
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSpec {
    algebra: AlgebraSpec,
    dim: usize,
    actions: Vec<Action>,
}

impl ModuleSpec {
    /// Builds a multimodule, rejecting it if any axiom fails.
    pub fn new(algebra: AlgebraSpec, dim: usize, actions: Vec<Action>) -> Result<ModuleSpec> {
        for (k, a) in actions.iter().enumerate() {
            if actions[..k].iter().any(|b| b.name == a.name) {
                return Err(Error::InvalidModule(format!("duplicate action name `{}`", a.name)));
            }
            if a.operators.len() != algebra.dim()
                || a.operators.iter().any(|m| m.rows() != dim || m.cols() != dim || m.field() != algebra.field())
            {
                return Err(Error::InvalidModule(format!(
                    "action `{}` needs {} operators of size {dim}x{dim} over {}",
                    a.name,
                    algebra.dim(),
                    algebra.field()
                )));
            }
        }
        let module = ModuleSpec { algebra, dim, actions };
        module.validate().map_err(|v| Error::InvalidModule(v.to_string()))?;
        Ok(module)
    }

    pub fn algebra(&self) -> &AlgebraSpec {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn actions(&self) -> &[Action] {
        &self.actions
    }

    pub fn action(&self, name: &str) -> Option<&Action> {
        self.actions.iter().find(|a| a.name == name)
    }

    /// Matrix of the action of an arbitrary algebra element.
    pub fn operator(&self, action: &Action, element: &[crate::scalar::Scalar]) -> Matrix {
        let field = self.algebra.field();
        let mut out = Matrix::zeros(field, self.dim, self.dim);
        for (op, c) in action.operators.iter().zip(element) {
            if !c.is_zero() {
                out = out.add(&op.scale(c)).expect("same shape");
            }
        }
        out
    }

    /// Exhaustive check of unitality, the composition law of each tag, and
    /// pairwise commutation of distinct actions, over basis elements.
    pub fn validate(&self) -> std::result::Result<(), ModuleViolation> {
        let alg = &self.algebra;
        let n = alg.dim();
        let id = Matrix::identity(alg.field(), self.dim);
        let prod = |i: usize, j: usize| alg.product_of_basis(i, j).to_vec();
        for a in &self.actions {
            if self.operator(a, alg.unit()) != id {
                return Err(ModuleViolation { axiom: Axiom::Unital, action: a.name.clone(), other_action: None, basis: (0, 0) });
            }
            for i in 0..n {
                for j in 0..n {
                    let composed = a.operators[i].mul(&a.operators[j]).expect("square");
                    let left_ok = composed == self.operator(a, &prod(i, j));
                    let right_ok = composed == self.operator(a, &prod(j, i));
                    let failed = match a.tag {
                        ActionTag::Left if !left_ok => Some(Axiom::LeftComposition),
                        ActionTag::Right if !right_ok => Some(Axiom::RightComposition),
                        ActionTag::LR if !left_ok => Some(Axiom::LeftComposition),
                        ActionTag::LR if !right_ok => Some(Axiom::RightComposition),
                        _ => None,
                    };
                    if let Some(axiom) = failed {
                        return Err(ModuleViolation { axiom, action: a.name.clone(), other_action: None, basis: (i, j) });
                    }
                }
            }
        }
        for (k, a) in self.actions.iter().enumerate() {
            for b in &self.actions[k + 1..] {
                for i in 0..n {
                    for j in 0..n {
                        let ab = a.operators[i].mul(&b.operators[j]).expect("square");
                        let ba = b.operators[j].mul(&a.operators[i]).expect("square");
                        if ab != ba {
                            return Err(ModuleViolation {
                                axiom: Axiom::Commutation,
                                action: a.name.clone(),
                                other_action: Some(b.name.clone()),
                                basis: (i, j),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    // ---- builders ----

    /// `A` as a bimodule over itself: `left` by left multiplication, `right`
    /// by right multiplication.
    pub fn regular_bimodule(alg: &AlgebraSpec) -> Result<ModuleSpec> {
        ModuleSpec::multi_regular(alg, 1, 1).map(|mut m| {
            m.actions[0].name = "left".into();
            m.actions[1].name = "right".into();
            m
        })
    }

    /// A commutative algebra acting on itself by a single lr action.
    pub fn symmetric_module(alg: &AlgebraSpec) -> Result<ModuleSpec> {
        if !alg.is_commutative() {
            return Err(Error::InvalidModule("symmetric module needs a commutative algebra".into()));
        }
        let action = Action {
            name: "lr".into(),
            tag: ActionTag::LR,
            operators: (0..alg.dim()).map(|i| alg.left_mult(i)).collect(),
        };
        ModuleSpec::new(alg.clone(), alg.dim(), vec![action])
    }

    /// `A` with `l` copies of left multiplication and `r` copies of right
    /// multiplication, named `left1.., right1..`. Rejected unless the copies
    /// commute, which for `l >= 2` or `r >= 2` forces commutativity.
    pub fn multi_regular(alg: &AlgebraSpec, l: usize, r: usize) -> Result<ModuleSpec> {
        let n = alg.dim();
        let mut actions = Vec::new();
        for k in 1..=l {
            actions.push(Action { name: format!("left{k}"), tag: ActionTag::Left, operators: (0..n).map(|i| alg.left_mult(i)).collect() });
        }
        for k in 1..=r {
            actions.push(Action { name: format!("right{k}"), tag: ActionTag::Right, operators: (0..n).map(|i| alg.right_mult(i)).collect() });
        }
        ModuleSpec::new(alg.clone(), n, actions)
    }

    /// `A^{⊗k}` with a left and a right multiplication on each tensor factor,
    /// named `left{t}` / `right{t}` for `t = 1..=k`. Actions on different
    /// factors commute for any algebra.
    pub fn tensor_regular(alg: &AlgebraSpec, k: usize) -> Result<ModuleSpec> {
        let n = alg.dim();
        let field = alg.field();
        let dim = n.pow(k as u32);
        let embed = |t: usize, m: &Matrix| {
            let before = Matrix::identity(field, n.pow(t as u32));
            let after = Matrix::identity(field, n.pow((k - 1 - t) as u32));
            before.kron(m).kron(&after)
        };
        let mut actions = Vec::new();
        for t in 0..k {
            actions.push(Action { name: format!("left{}", t + 1), tag: ActionTag::Left, operators: (0..n).map(|i| embed(t, &alg.left_mult(i))).collect() });
            actions.push(Action { name: format!("right{}", t + 1), tag: ActionTag::Right, operators: (0..n).map(|i| embed(t, &alg.right_mult(i))).collect() });
        }
        ModuleSpec::new(alg.clone(), dim, actions)
    }

    /// Checks that `assignment` sends every class of `classes` to an action of
    /// compatible type: Left classes need a Left or LR action, Right classes a
    /// Right or LR action, LR classes an LR action; untyped classes accept
    /// anything.
    pub fn validate_assignment(
        &self,
        classes: &ActionClassReport,
        assignment: &BTreeMap<usize, String>,
    ) -> Result<()> {
        for (&class, name) in assignment {
            if class >= classes.classes.len() {
                return Err(Error::InvalidAssignment(format!("unknown action class {class}")));
            }
            if self.action(name).is_none() {
                return Err(Error::InvalidAssignment(format!("unknown action `{name}`")));
            }
        }
        for (id, class) in classes.classes.iter().enumerate() {
            let Some(name) = assignment.get(&id) else {
                return Err(Error::InvalidAssignment(format!("action class {id} is not assigned")));
            };
            let tag = self.action(name).expect("checked above").tag;
            if !class.kind.accepts(tag) {
                return Err(Error::InvalidAssignment(format!(
                    "class {id} is {} but action `{name}` is {tag}",
                    class.kind
                )));
            }
        }
        Ok(())
    }

    /// For every class, the first compatible action not yet used by an
    /// earlier class, falling back to the first compatible one.
    pub fn default_assignment(&self, classes: &ActionClassReport) -> Result<BTreeMap<usize, String>> {
        let mut used = vec![false; self.actions.len()];
        let mut out = BTreeMap::new();
        for (id, class) in classes.classes.iter().enumerate() {
            let compatible = |k: &usize| class.kind.accepts(self.actions[*k].tag);
            let k = (0..self.actions.len())
                .filter(compatible)
                .find(|&k| !used[k])
                .or_else(|| (0..self.actions.len()).find(compatible))
                .ok_or_else(|| {
                    Error::InvalidAssignment(format!("no action compatible with {} class {id}", class.kind))
                })?;
            used[k] = true;
            out.insert(id, self.actions[k].name.clone());
        }
        Ok(out)
    }
}

impl ClassType {
    pub fn accepts(self, tag: ActionTag) -> bool {
        match self {
            ClassType::Untyped => true,
            ClassType::Left => matches!(tag, ActionTag::Left | ActionTag::LR),
            ClassType::Right => matches!(tag, ActionTag::Right | ActionTag::LR),
            ClassType::LR => tag == ActionTag::LR,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Group;
    use crate::scalar::{Field, Scalar};

    const Q: Field = Field::Rationals;

    #[test]
    fn regular_bimodule_is_valid() {
        let alg = AlgebraSpec::upper_tri(Q, 2).unwrap();
        let m = ModuleSpec::regular_bimodule(&alg).unwrap();
        assert_eq!(m.actions().len(), 2);
        assert_eq!(m.action("left").unwrap().tag, ActionTag::Left);
        assert_eq!(m.action("right").unwrap().tag, ActionTag::Right);
    }

    #[test]
    fn left_multiplication_tagged_lr_is_rejected() {
        let alg = AlgebraSpec::upper_tri(Q, 2).unwrap();
        let action = Action { name: "a".into(), tag: ActionTag::LR, operators: (0..3).map(|i| alg.left_mult(i)).collect() };
        let err = ModuleSpec::new(alg, 3, vec![action]).unwrap_err();
        assert!(err.to_string().contains("op(e"), "{err}");
    }

    #[test]
    fn symmetric_module_has_one_lr_action() {
        let alg = AlgebraSpec::trunc_poly(Q, 2).unwrap();
        let m = ModuleSpec::symmetric_module(&alg).unwrap();
        assert_eq!(m.actions().len(), 1);
        assert_eq!(m.actions()[0].tag, ActionTag::LR);
        assert!(ModuleSpec::symmetric_module(&AlgebraSpec::upper_tri(Q, 2).unwrap()).is_err());
    }

    #[test]
    fn two_left_copies_need_commutativity() {
        let nc = AlgebraSpec::upper_tri(Q, 2).unwrap();
        let err = ModuleSpec::multi_regular(&nc, 2, 0).unwrap_err();
        assert!(err.to_string().contains("do not commute"), "{err}");
        let c = AlgebraSpec::group_algebra(Q, Group::Cyclic(3)).unwrap();
        assert!(ModuleSpec::multi_regular(&c, 2, 1).is_ok());
    }

    #[test]
    fn actions_on_distinct_tensor_factors_commute() {
        let alg = AlgebraSpec::upper_tri(Q, 2).unwrap();
        let m = ModuleSpec::tensor_regular(&alg, 2).unwrap();
        assert_eq!(m.dim(), 9);
        assert_eq!(m.actions().len(), 4);
    }

    #[test]
    fn validated_module_commutes_on_random_vectors() {
        let alg = AlgebraSpec::group_algebra(Q, Group::Symmetric3).unwrap();
        let m = ModuleSpec::regular_bimodule(&alg).unwrap();
        let a: Vec<Scalar> = (0..6).map(|i| Q.from_i64(3 - i)).collect();
        let b: Vec<Scalar> = (0..6).map(|i| Q.from_i64(i * i - 4)).collect();
        let x: Vec<Scalar> = (0..6).map(|i| Q.from_i64(2 * i + 1)).collect();
        let la = m.operator(m.action("left").unwrap(), &a);
        let rb = m.operator(m.action("right").unwrap(), &b);
        let lhs = la.apply(&rb.apply(&x).unwrap()).unwrap();
        let rhs = rb.apply(&la.apply(&x).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}
