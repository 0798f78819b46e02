use std::collections::BTreeSet;

use num_traits::Zero;

use super::{witnesses, WitnessCertificate};
use crate::error::{PosetError, Result};
use crate::incidence::IntervalFunction;
use crate::poset::{Element, PosetHandle};
use crate::scalar::GaussianRational;
use crate::transforms::{mobius_inversion, FiniteSupportFunction};

/// Candidates examined per verification unless the caller says otherwise.
pub const DEFAULT_WITNESS_BUDGET: usize = 10_000;

/// `f(z) = sum_{x in ideal(z)} mu(x, z) g(x)`, summed over the whole ideal.
pub fn invert_over_ideal(
    mu: &IntervalFunction,
    g: &FiniteSupportFunction,
    z: &Element,
) -> Result<GaussianRational> {
    let mut acc = GaussianRational::zero();
    for x in g.poset().ideal(z)? {
        let gx = g.get(&x);
        if !gx.is_zero() {
            acc += &mu.evaluate(&x, z)? * &gx;
        }
    }
    Ok(acc)
}

/// Runs the argument that `f` and `g` cannot both be finitely supported on a
/// concrete `g`: picks the first `y` with `f(y) != 0`, takes `S = supp(g)`, and
/// for each witness `z` records `mu(y, z) f(y)` next to `f(z)` computed directly.
pub fn verify_theorem_conclusion(
    p: &PosetHandle,
    g: &FiniteSupportFunction,
    count: usize,
    budget: usize,
) -> Result<Vec<WitnessCertificate>> {
    p.ensure_same(g.poset())?;
    if g.is_zero() {
        return Err(PosetError::ZeroFunction);
    }
    let f = mobius_inversion(g);

    // A minimal element m of supp(g) has f(m) = g(m) != 0, so the downward
    // closure of the support always contains a nonzero of f.
    let mut closure = BTreeSet::new();
    for s in g.support() {
        closure.extend(p.ideal(s)?);
    }
    let mut y_and_fy = None;
    for y in closure {
        let fy = f.evaluate(&y)?;
        if !fy.is_zero() {
            y_and_fy = Some((y, fy));
            break;
        }
    }
    let (y, fy) = y_and_fy.expect("the support closure contains a nonzero of f");

    let avoid: Vec<Element> = g.support().cloned().collect();
    let stream = witnesses(p, &y, &avoid, count, budget)?;
    let mu = stream.checker().mobius().clone();
    let mut certs = Vec::with_capacity(count);
    for cert in stream {
        let mut cert = cert?;
        let predicted = &cert.mu_yz * &fy;
        let observed = invert_over_ideal(&mu, g, &cert.z)?;
        if predicted != observed || observed.is_zero() {
            return Err(PosetError::IdentityViolated {
                z: cert.z.to_string(),
                predicted: predicted.to_string(),
                observed: observed.to_string(),
            });
        }
        cert.predicted_fz = Some(predicted);
        cert.observed_fz = Some(observed);
        certs.push(cert);
    }
    if certs.len() < count {
        return Err(PosetError::InsufficientWitnesses {
            requested: count,
            partial: certs,
        });
    }
    Ok(certs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn point_mass_at_one() {
        let p = PosetHandle::divisibility();
        let g = FiniteSupportFunction::point_mass(&p, Element::Int(1), int(1)).unwrap();
        let certs = verify_theorem_conclusion(&p, &g, 3, 100).unwrap();
        let zs: Vec<String> = certs.iter().map(|c| c.z.to_string()).collect();
        assert_eq!(zs, vec!["2", "3", "5"]);
        for c in &certs {
            assert_eq!(c.y, Element::Int(1));
            assert_eq!(c.observed_fz, Some(int(-1)));
            assert_eq!(c.predicted_fz, c.observed_fz);
        }
    }

    #[test]
    fn two_point_support() {
        let p = PosetHandle::divisibility();
        let g = FiniteSupportFunction::from_entries(&p, [(Element::Int(1), int(1)), (Element::Int(6), int(-2))]).unwrap();
        let certs = verify_theorem_conclusion(&p, &g, 2, 100).unwrap();
        assert_eq!(certs.len(), 2);
        for c in &certs {
            assert!(c.all_conditions());
            assert!(!c.observed_fz.as_ref().unwrap().is_zero());
            assert_eq!(c.predicted_fz, c.observed_fz);
        }
    }

    #[test]
    fn subsets_point_mass_at_empty() {
        let p = PosetHandle::subsets();
        let g = FiniteSupportFunction::point_mass(&p, Element::set([]), int(1)).unwrap();
        let certs = verify_theorem_conclusion(&p, &g, 2, 100).unwrap();
        let zs: Vec<String> = certs.iter().map(|c| c.z.to_string()).collect();
        assert_eq!(zs, vec!["{1}", "{2}"]);
        assert!(certs.iter().all(|c| c.observed_fz == Some(int(-1))));
    }

    #[test]
    fn zero_function_rejected() {
        let p = PosetHandle::divisibility();
        let g = FiniteSupportFunction::zero(&p);
        assert!(matches!(verify_theorem_conclusion(&p, &g, 1, 10), Err(PosetError::ZeroFunction)));
    }

    #[test]
    fn chain_runs_out_of_witnesses() {
        // g = δ_1 on the chain: f = mu(1, .) is supported on {1, 2}, so z = 2 is the only witness.
        let p = PosetHandle::chain();
        let g = FiniteSupportFunction::point_mass(&p, Element::Int(1), int(1)).unwrap();
        match verify_theorem_conclusion(&p, &g, 2, 30) {
            Err(PosetError::InsufficientWitnesses { requested, partial }) => {
                assert_eq!(requested, 2);
                assert_eq!(partial.len(), 1);
                assert_eq!(partial[0].z, Element::Int(2));
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
