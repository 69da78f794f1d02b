//! Composition tables relating the `f_I` to the automorphisms of `P_n`.
//!
//! Each function returns the list of mismatches (empty when the table holds).
//! Maps into `F_2` are compared by literal equality of reduced images.

use crate::aut::{self, alpha, beta, phi, precompose, psi, xi, AutError, PnEndo};
use crate::hom::{compose_with_f2_auto, f_subset, F2Automorphism, GeneratorMap};
use crate::subsets::{subsets_34, swap_adjacent};

fn compare(
    label: String,
    actual: &GeneratorMap,
    expected: &GeneratorMap,
    out: &mut Vec<String>,
) -> Result<(), AutError> {
    if !actual.agrees_with(expected)? {
        out.push(label);
    }
    Ok(())
}

fn f(n: usize, subset: &[usize]) -> Result<GeneratorMap, AutError> {
    Ok(f_subset(n, subset)?)
}

/// `f_I ∘ ψ = f_I` and `f_I ∘ φ_{p,q} = f_I`.
pub fn transvections(n: usize) -> Result<Vec<String>, AutError> {
    let mut autos: Vec<(String, PnEndo)> = vec![("psi".into(), psi(n)?)];
    for p in 1..=n {
        for q in p + 1..=n {
            if (p, q) != (1, 2) {
                autos.push((format!("phi_{p},{q}"), phi(p, q, n)?));
            }
        }
    }
    let mut bad = Vec::new();
    for subset in subsets_34(n) {
        let fi = f(n, &subset)?;
        for (name, e) in &autos {
            compare(format!("f_{subset:?} o {name}"), &precompose(&fi, e)?, &fi, &mut bad)?;
        }
    }
    Ok(bad)
}

/// `f_I ∘ ξ = λ ∘ f_I` with `λ: x ↦ x⁻¹, y ↦ x y⁻¹ x⁻¹`.
pub fn xi_table(n: usize) -> Result<Vec<String>, AutError> {
    let e = xi(n)?;
    let lambda = F2Automorphism::lambda_xi();
    let mut bad = Vec::new();
    for subset in subsets_34(n) {
        let fi = f(n, &subset)?;
        let expected = compose_with_f2_auto(&fi, &lambda)?;
        compare(format!("f_{subset:?} o xi"), &precompose(&fi, &e)?, &expected, &mut bad)?;
    }
    Ok(bad)
}

/// `λ_j` with `λ_3 = λ_1`.
fn lambda(j: usize) -> F2Automorphism {
    match j {
        2 => F2Automorphism::lambda2(),
        _ => F2Automorphism::lambda1(),
    }
}

/// `f_I ∘ β_k = λ_j ∘ f_{τ_k(I)}` if `k = i_j = i_{j+1} - 1`, else `f_{τ_k(I)}`, for `k < n`.
pub fn beta_k_table(n: usize) -> Result<Vec<String>, AutError> {
    let mut bad = Vec::new();
    for k in 1..n {
        let e = beta(k, n)?;
        for subset in subsets_34(n) {
            let fi = f(n, &subset)?;
            let moved = swap_adjacent(&subset, k);
            let twist = subset
                .windows(2)
                .position(|w| w[0] == k && w[1] == k + 1)
                .map(|p| p + 1);
            let base = f(n, &moved)?;
            let expected = match twist {
                Some(j) => compose_with_f2_auto(&base, &lambda(j))?,
                None => base,
            };
            compare(format!("f_{subset:?} o beta_{k}"), &precompose(&fi, &e)?, &expected, &mut bad)?;
        }
    }
    Ok(bad)
}

/// The four-case table for `f_I ∘ β_n`.
pub fn beta_n_table(n: usize) -> Result<Vec<String>, AutError> {
    let e = beta(n, n)?;
    let mut bad = Vec::new();
    for subset in subsets_34(n) {
        let fi = f(n, &subset)?;
        let has_n = subset.last() == Some(&n);
        let expected = match (subset.len(), has_n) {
            (3, false) => {
                let mut bigger = subset.clone();
                bigger.push(n);
                f(n, &bigger)?
            }
            (3, true) => compose_with_f2_auto(&fi, &F2Automorphism::lambda1())?,
            (_, false) => fi.clone(),
            (_, true) => f(n, &subset[..3])?,
        };
        compare(format!("f_{subset:?} o beta_{n}"), &precompose(&fi, &e)?, &expected, &mut bad)?;
    }
    Ok(bad)
}

/// `f_I = f_[3] ∘ α_I`, `f_I = f_[4] ∘ α_I` and `f_{1,2,3,n} = f_[3] ∘ β_n`.
pub fn alpha_witnesses(n: usize) -> Result<Vec<String>, AutError> {
    let f3 = f(n, &[1, 2, 3])?;
    let f4 = if n >= 4 { Some(f(n, &[1, 2, 3, 4])?) } else { None };
    let mut bad = Vec::new();
    for subset in subsets_34(n) {
        let base = if subset.len() == 3 { &f3 } else { f4.as_ref().unwrap() };
        let composite = precompose(base, &alpha(&subset, n)?)?;
        compare(format!("f_{subset:?} vs alpha"), &composite, &f(n, &subset)?, &mut bad)?;
    }
    if n >= 4 {
        let composite = precompose(&f3, &aut::beta_n(n)?)?;
        compare(format!("f_[1, 2, 3, {n}] vs f_[3] o beta_{n}"), &composite, &f(n, &[1, 2, 3, n])?, &mut bad)?;
    }
    Ok(bad)
}
