//! The textbook Hochschild complex of a bimodule, written out directly.
//! Kept independent of the simplicial machinery so the two can be compared.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::multimodule::{Action, ActionTag, ModuleSpec};
use crate::scalar::Scalar;

use super::{Complex, Variant};

fn bimodule_actions(module: &ModuleSpec) -> Result<(&Action, &Action)> {
    let pick = |tag: ActionTag| {
        let found: Vec<&Action> = module.actions().iter().filter(|a| a.tag == tag).collect();
        match found[..] {
            [a] => Ok(a),
            _ => Err(Error::InvalidModule(format!(
                "a bimodule needs exactly one {tag} action, found {}",
                found.len()
            ))),
        }
    };
    Ok((pick(ActionTag::Left)?, pick(ActionTag::Right)?))
}

/// Digits of `idx` in base `d`, most significant first (`a_1` first).
fn digits(mut idx: usize, d: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for k in (0..n).rev() {
        out[k] = idx % d;
        idx /= d;
    }
    out
}

fn undigits(module_index: usize, a: &[usize], d: usize) -> usize {
    a.iter().fold(module_index, |acc, &x| acc * d + x)
}

/// `d_i: M ⊗ A^{⊗n} -> M ⊗ A^{⊗(n-1)}` on the basis `m ⊗ a_1 ⊗ … ⊗ a_n`,
/// `a_1` most significant after `m`.
fn face(module: &ModuleSpec, left: &Action, right: &Action, n: usize, i: usize) -> Result<Matrix> {
    let alg = module.algebra();
    let d = alg.dim();
    let dm = module.dim();
    let field = alg.field();
    let mut out = Matrix::zeros(field, dm * d.pow(n as u32 - 1), dm * d.pow(n as u32));
    for m in 0..dm {
        for t in 0..d.pow(n as u32) {
            let a = digits(t, d, n);
            let col = undigits(m, &a, d);
            if i == 0 || i == n {
                let (op, rest) = if i == 0 {
                    (&right.operators[a[0]], &a[1..])
                } else {
                    (&left.operators[a[n - 1]], &a[..n - 1])
                };
                for m2 in 0..dm {
                    let c = op.get(m2, m);
                    if !c.is_zero() {
                        out.add_at(undigits(m2, rest, d), col, &c);
                    }
                }
            } else {
                let prod = alg.product_of_basis(a[i - 1], a[i]);
                for (k, c) in prod.iter().enumerate() {
                    if !c.is_zero() {
                        let mut b = a[..i - 1].to_vec();
                        b.push(k);
                        b.extend_from_slice(&a[i + 1..]);
                        out.add_at(undigits(m, &b, d), col, c);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `δ^i: Hom(A^{⊗n}, M) -> Hom(A^{⊗(n+1)}, M)` in the dual basis:
/// `a_1 f(a_2, …)`, `f(…, a_i a_{i+1}, …)`, `f(a_1, …, a_n) a_{n+1}`.
fn coface(module: &ModuleSpec, left: &Action, right: &Action, n: usize, i: usize) -> Result<Matrix> {
    let alg = module.algebra();
    let d = alg.dim();
    let dm = module.dim();
    let field = alg.field();
    let mut out = Matrix::zeros(field, dm * d.pow(n as u32 + 1), dm * d.pow(n as u32));
    for t in 0..d.pow(n as u32 + 1) {
        let a = digits(t, d, n + 1);
        // the argument f is evaluated on, with coefficients
        let args: Vec<(Vec<usize>, Scalar)> = if i == 0 {
            vec![(a[1..].to_vec(), field.one())]
        } else if i == n + 1 {
            vec![(a[..n].to_vec(), field.one())]
        } else {
            alg.product_of_basis(a[i - 1], a[i])
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| {
                    let mut b = a[..i - 1].to_vec();
                    b.push(k);
                    b.extend_from_slice(&a[i + 1..]);
                    (b, c.clone())
                })
                .collect()
        };
        for m_in in 0..dm {
            // value of f_{m_in, β} after the outer action, per output m
            let mut images: Vec<(usize, Scalar)> = Vec::new();
            let op = if i == 0 {
                Some(&left.operators[a[0]])
            } else if i == n + 1 {
                Some(&right.operators[a[n]])
            } else {
                None
            };
            match op {
                Some(op) => {
                    for m_out in 0..dm {
                        let c = op.get(m_out, m_in);
                        if !c.is_zero() {
                            images.push((m_out, c));
                        }
                    }
                }
                None => images.push((m_in, field.one())),
            }
            for (beta, cb) in &args {
                let col = undigits(m_in, beta, d);
                for (m_out, c) in &images {
                    out.add_at(undigits(*m_out, &a, d), col, &(c * cb));
                }
            }
        }
    }
    Ok(out)
}

/// The Hochschild (co)chain complex of a bimodule with one left and one right
/// action, degrees `0..=max_degree`.
pub fn classical_complex(module: &ModuleSpec, variant: Variant, max_degree: usize) -> Result<Complex> {
    let (left, right) = bimodule_actions(module)?;
    let field = module.algebra().field();
    let d = module.algebra().dim();
    let dims: Vec<usize> = (0..=max_degree).map(|n| module.dim() * d.pow(n as u32)).collect();
    let mut differentials = Vec::new();
    match variant {
        Variant::Chain => {
            differentials.push(Matrix::zeros(field, 0, dims[0]));
            for n in 1..=max_degree {
                let mut delta = Matrix::zeros(field, dims[n - 1], dims[n]);
                for i in 0..=n {
                    let f = face(module, left, right, n, i)?;
                    delta = if i % 2 == 0 { delta.add(&f)? } else { delta.sub(&f)? };
                }
                differentials.push(delta);
            }
        }
        Variant::Cochain => {
            for n in 0..max_degree {
                let mut delta = Matrix::zeros(field, dims[n + 1], dims[n]);
                for i in 0..=n + 1 {
                    let f = coface(module, left, right, n, i)?;
                    delta = if i % 2 == 0 { delta.add(&f)? } else { delta.sub(&f)? };
                }
                differentials.push(delta);
            }
        }
    }
    Ok(Complex::new(variant, dims, differentials))
}
