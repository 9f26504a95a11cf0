use std::thread;

use serde::{Deserialize, Serialize};

use super::CurveSpec;
use crate::error::{Error, Result};
use crate::exactalg::{jacobian, Modulus, Q};
use crate::groebner::IdealHandle;

/// Jacobian-criterion verdict over F_p.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SmoothnessVerdict {
    SmoothModP { p: u64 },
    /// `witness` is the reduced basis of the singular-locus ideal.
    SingularModP { p: u64, witness: Vec<String> },
    Indeterminate { p: u64, reason: String },
}

impl SmoothnessVerdict {
    pub fn is_smooth(&self) -> bool {
        matches!(self, SmoothnessVerdict::SmoothModP { .. })
    }
}

/// Smoothness of the projective scheme of a homogeneous ideal, tested modulo `p`:
/// the ideal plus all `c×c` Jacobian minors (`c` = codimension) must be projectively empty.
pub fn smoothness_probe_ideal(ideal: &IdealHandle<Q>, p: u64) -> Result<SmoothnessVerdict> {
    let hq = ideal.hilbert()?;
    if hq.is_empty() {
        return Err(Error::Input("the scheme is empty".into()));
    }
    let m = Modulus::new(p)?;
    let ip = match ideal.mod_p(m) {
        Ok(i) => i,
        Err(Error::BadPrime(reason)) => return Ok(SmoothnessVerdict::Indeterminate { p, reason }),
        Err(e) => return Err(e),
    };
    let hp = ip.hilbert()?;
    if hp.hp != hq.hp {
        return Ok(SmoothnessVerdict::Indeterminate {
            p,
            reason: "Hilbert polynomial differs from the one over Q".into(),
        });
    }
    let nv = ip.ring().nvars();
    let codim = nv - 1 - hq.dim as usize;
    let gens: Vec<_> = ip.gens().iter().filter(|g| !g.is_zero()).cloned().collect();
    let singular = if codim == 0 {
        ip.clone()
    } else {
        let vars: Vec<&str> = ip.ring().vars().iter().map(|s| s.as_str()).collect();
        let jac = jacobian(&gens, &vars)?;
        if codim > jac.rows().min(jac.cols()) {
            ip.clone()
        } else {
            let minors: Vec<_> = jac.minors(codim)?.into_iter().filter(|f| !f.is_zero()).collect();
            ip.with_gens(&minors)?
        }
    };
    if singular.is_projectively_empty()? {
        Ok(SmoothnessVerdict::SmoothModP { p })
    } else {
        let witness = singular.basis().iter().map(|g| g.to_string()).collect();
        Ok(SmoothnessVerdict::SingularModP { p, witness })
    }
}

/// Probe a curve modulo each prime, concurrently; verdicts come back in prime order.
pub fn smoothness_probe(spec: &CurveSpec, primes: &[u64]) -> Result<Vec<SmoothnessVerdict>> {
    if spec.hilbert.dim != 1 {
        return Err(Error::Input(format!("expected a curve, got dimension {}", spec.hilbert.dim)));
    }
    spec.reduced.hilbert()?;
    thread::scope(|s| {
        let handles: Vec<_> =
            primes.iter().map(|&p| s.spawn(move || smoothness_probe_ideal(&spec.reduced, p))).collect();
        handles.into_iter().map(|h| h.join().expect("probe thread")).collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_poly, MonomialOrder, Ring};

    #[test]
    fn crossing_lines_are_singular() {
        let r = Ring::new(&["x", "y", "z"], MonomialOrder::GrevLex, ());
        let i = IdealHandle::new(&r, vec![parse_poly(&r, "x*y").unwrap()]).unwrap();
        match smoothness_probe_ideal(&i, 32003).unwrap() {
            SmoothnessVerdict::SingularModP { witness, .. } => assert_eq!(witness, vec!["y", "x"]),
            v => panic!("unexpected {v:?}"),
        }
        let conic = IdealHandle::new(&r, vec![parse_poly(&r, "x*y - z^2").unwrap()]).unwrap();
        assert!(smoothness_probe_ideal(&conic, 65537).unwrap().is_smooth());
        let bad = IdealHandle::new(&r, vec![parse_poly(&r, "x*y - 1/3*z^2").unwrap()]).unwrap();
        assert!(matches!(smoothness_probe_ideal(&bad, 3).unwrap(), SmoothnessVerdict::Indeterminate { .. }));
    }
}
