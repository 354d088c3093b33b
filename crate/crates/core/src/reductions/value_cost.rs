use std::sync::Arc;

use super::{Fidelity, NamedReduction, Problem};
use crate::error::{Error, Result};
use crate::fop::FirstOrderQuery;
use crate::logic::{Formula, Term};
use crate::problems::{decode_dnf, encode_vcsat, Qbf2Dnf, VcsatInstance};
use crate::structure::Vocabulary;

/// Existential variables cost 1, universal ones `2ⁿ − 1`, the bound is
/// `2ⁿ⁻¹`. Needs `n ≥ 2` so that all existential variables together stay
/// within the bound while no universal one does.
pub fn vcsat_image(inst: &Qbf2Dnf) -> Result<VcsatInstance> {
    let n = inst.vars;
    if n < 2 {
        return Err(Error::SizeTooSmall { what: "value-cost variables".into(), required: 2, found: n });
    }
    if n > 63 {
        return Err(Error::budget("value bits", n as u128, 63));
    }
    let values = (0..n).map(|v| if inst.existential.contains(&v) { 1 } else { (1u64 << n) - 1 }).collect();
    VcsatInstance::new(n, inst.implicants.clone(), values, 1 << (n - 1))
}

/// `P ≡ Q`, `N ≡ M`, `V(x, y) ≡ y = 0 ∨ (y ≠ 0 ∧ ¬E(x))`, `K(x) ≡ x = max`.
pub fn qsat2_to_vcsat() -> Result<NamedReduction> {
    let x = || Term::var("x1");
    let y = || Term::var("y1");
    let y_zero = || Formula::eq(y(), Term::Num(0));
    let query = FirstOrderQuery::new(
        "qsat2-vcsat",
        Arc::new(Vocabulary::sigma_dnf()),
        Arc::new(Vocabulary::tau()),
        1,
        Formula::True,
        vec![
            ("P".into(), Formula::rel("Q", [x(), y()])),
            ("N".into(), Formula::rel("M", [x(), y()])),
            (
                "V".into(),
                Formula::Or(vec![
                    y_zero(),
                    Formula::And(vec![Formula::not(y_zero()), Formula::not(Formula::rel("E", [x()]))]),
                ]),
            ),
            ("K".into(), Formula::eq(x(), Term::Max)),
        ],
        vec![],
    )?;
    Ok(NamedReduction {
        name: "qsat2-vcsat".into(),
        source: Problem::Qsat2,
        target: Problem::Vcsat,
        query,
        fidelity: Fidelity::Corrected,
        direct: Some(Arc::new(|a| encode_vcsat(&vcsat_image(&decode_dnf(a)?)?))),
    })
}
