//! Oracles shared by the integration tests. They use only structure
//! constants, face maps and plain dense elimination, never the complex
//! pipeline they are compared with.
#![allow(dead_code)]

use num_rational::BigRational;
use num_traits::Zero;

use higher_hochschild::algebra::AlgebraSpec;
use higher_hochschild::hochschild::{hom_functor_on_morphism, loday_on_morphism, PointedMap};
use higher_hochschild::matrix::Matrix;
use higher_hochschild::multimodule::ModuleSpec;
use higher_hochschild::simplicial::{SimplexRef, SimplicialSet};

/// Rank of dense rational rows by textbook Gauss-Jordan.
pub fn dense_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = &rows[r][c] / &pivot;
                for k in c..cols {
                    let delta = &rows[rank][k] * &f;
                    rows[r][k] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Structure constants `c[i][j][k]` of `e_i e_j = Σ c_k e_k` over Q.
fn constants(alg: &AlgebraSpec) -> Vec<Vec<Vec<BigRational>>> {
    let d = alg.dim();
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| alg.product_of_basis(i, j).iter().map(|s| s.as_rational().expect("over Q").clone()).collect())
                .collect()
        })
        .collect()
}

/// dim Z(A): nullity of `z -> (z e_i - e_i z)_i`.
pub fn center_dim(alg: &AlgebraSpec) -> usize {
    let d = alg.dim();
    let c = constants(alg);
    // one row per (i, k) output coordinate, one column per coordinate of z
    let mut rows = Vec::new();
    for i in 0..d {
        for k in 0..d {
            rows.push((0..d).map(|l| &c[l][i][k] - &c[i][l][k]).collect());
        }
    }
    d - dense_rank(rows)
}

/// dim A - dim span{ab - ba}.
pub fn commutator_quotient_dim(alg: &AlgebraSpec) -> usize {
    let d = alg.dim();
    let c = constants(alg);
    let mut rows = Vec::new();
    for i in 0..d {
        for j in 0..d {
            rows.push((0..d).map(|k| &c[i][j][k] - &c[j][i][k]).collect());
        }
    }
    d - dense_rank(rows)
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for k in 0..items.len() {
        let mut rest = items.to_vec();
        let first = rest.remove(k);
        for mut p in permutations(&rest) {
            p.insert(0, first);
            out.push(p);
        }
    }
    out
}

/// Whether `order` lists the elements so that those with equal `key` are
/// adjacent.
fn contiguous<K: PartialEq>(order: &[usize], key: impl Fn(usize) -> K) -> bool {
    let keys: Vec<K> = order.iter().map(|&e| key(e)).collect();
    (0..keys.len()).all(|a| {
        (a + 1..keys.len()).all(|b| keys[a] != keys[b] || (a..=b).all(|m| keys[m] == keys[a]))
    })
}

/// Whether some ordering of `fiber` could be induced by both two-step
/// factorizations `a` and `b` (face indices in application order). A
/// two-step composite induces exactly the orders in which the preimages of
/// each intermediate simplex sit together, since the order on each
/// single-face fiber is free.
pub fn jointly_orderable(x: &SimplicialSet, fiber: &[SimplexRef], a: [usize; 2], b: [usize; 2]) -> bool {
    let idx: Vec<usize> = (0..fiber.len()).collect();
    permutations(&idx).iter().any(|p| {
        contiguous(p, |e| x.face(&fiber[e], a[0]).unwrap()) && contiguous(p, |e| x.face(&fiber[e], b[0]).unwrap())
    })
}

/// The pointed-map variants used by the functor-law checks: every fiber
/// order, basepoint order and action choice for sources of size at most
/// two, otherwise a natural and a reversed variant.
pub fn map_variants(images: &[usize], target: usize, actions: &[&str]) -> Vec<PointedMap> {
    let mut fibers = vec![Vec::new(); target];
    let mut killed = Vec::new();
    for (k, &i) in images.iter().enumerate() {
        if i == 0 {
            killed.push(k + 1);
        } else {
            fibers[i - 1].push(k + 1);
        }
    }
    let make = |f: Vec<Vec<usize>>, b: Vec<(usize, String)>| {
        PointedMap::new(target, images.to_vec(), f, b).expect("consistent")
    };
    if images.len() > 2 {
        let alt = |k: usize| actions[k % actions.len()].to_string();
        let natural = killed.iter().map(|&e| (e, actions[0].to_string())).collect();
        let reversed = killed.iter().rev().enumerate().map(|(k, &e)| (e, alt(k + 1))).collect();
        let flipped = fibers.iter().map(|f| f.iter().rev().copied().collect()).collect();
        return vec![make(fibers, natural), make(flipped, reversed)];
    }
    let mut basepoints: Vec<Vec<(usize, String)>> = Vec::new();
    for p in permutations(&killed) {
        for mask in 0..actions.len().pow(p.len() as u32) {
            let mut m = mask;
            basepoints.push(
                p.iter()
                    .map(|&e| {
                        let name = actions[m % actions.len()].to_string();
                        m /= actions.len();
                        (e, name)
                    })
                    .collect(),
            );
        }
    }
    let mut orders: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for f in &fibers {
        orders = orders
            .into_iter()
            .flat_map(|o| {
                permutations(f).into_iter().map(move |p| {
                    let mut o = o.clone();
                    o.push(p);
                    o
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    for f in &orders {
        for b in &basepoints {
            out.push(make(f.clone(), b.clone()));
        }
    }
    out
}

/// All pointed maps `m₊ -> n₊` (as image lists).
pub fn all_maps(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|v: Vec<usize>| {
                (0..=n).map(move |i| {
                    let mut v = v.clone();
                    v.push(i);
                    v
                })
            })
            .collect();
    }
    out
}

/// Number of composites checked and the first violated law, over all maps
/// between pointed sets of size at most `max`.
pub fn functor_law_violation(module: &ModuleSpec, max: usize) -> (usize, Option<String>) {
    let actions: Vec<&str> = module.actions().iter().map(|a| a.name.as_str()).collect();
    let field = module.algebra().field();
    let size = |n: usize| module.dim() * module.algebra().dim().pow(n as u32);
    // maps out of each n, with both functors evaluated once
    let maps: Vec<Vec<(PointedMap, Matrix, Matrix)>> = (0..=max)
        .map(|n| {
            let mut out = Vec::new();
            for k in 0..=max {
                for im in all_maps(n, k) {
                    for f in map_variants(&im, k, &actions) {
                        let l = loday_on_morphism(module, &f).unwrap();
                        let h = hom_functor_on_morphism(module, &f).unwrap();
                        out.push((f, l, h));
                    }
                }
            }
            out
        })
        .collect();
    let mut checks = 0;
    for m in 0..=max {
        let id = PointedMap::identity(m);
        let id_m = Matrix::identity(field, size(m));
        if loday_on_morphism(module, &id).unwrap() != id_m || hom_functor_on_morphism(module, &id).unwrap() != id_m {
            return (checks, Some(format!("identity on {m}+")));
        }
        for (phi, l_phi, h_phi) in &maps[m] {
            let id_n = PointedMap::identity(phi.target);
            if loday_on_morphism(module, &phi.then_loday(&id_n, module).unwrap()).unwrap() != *l_phi
                || loday_on_morphism(module, &id.then_loday(phi, module).unwrap()).unwrap() != *l_phi
                || hom_functor_on_morphism(module, &phi.then_hom(&id_n, module).unwrap()).unwrap() != *h_phi
                || hom_functor_on_morphism(module, &id.then_hom(phi, module).unwrap()).unwrap() != *h_phi
            {
                return (checks, Some(format!("unit law for {phi:?}")));
            }
            for (psi, l_psi, h_psi) in &maps[phi.target] {
                checks += 1;
                let l = loday_on_morphism(module, &phi.then_loday(psi, module).unwrap()).unwrap();
                if l != l_psi.mul(l_phi).unwrap() {
                    return (checks, Some(format!("L(psi phi) for {phi:?} then {psi:?}")));
                }
                let h = hom_functor_on_morphism(module, &phi.then_hom(psi, module).unwrap()).unwrap();
                if h != h_phi.mul(h_psi).unwrap() {
                    return (checks, Some(format!("H(psi phi) for {phi:?} then {psi:?}")));
                }
            }
        }
    }
    (checks, None)
}
