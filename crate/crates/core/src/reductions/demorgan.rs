use std::sync::Arc;

use super::{Fidelity, NamedReduction, Problem};
use crate::error::Result;
use crate::fop::FirstOrderQuery;
use crate::logic::{Formula, Term};
use crate::problems::{decode_dnf, encode_cnf, LiteralSet, Qbf2Cnf};
use crate::structure::Vocabulary;

/// The negation of the DNF written as a CNF: `P = M`, `N = Q`, `E` kept.
pub fn qsat2_to_qunsat2() -> Result<NamedReduction> {
    let x = || Term::var("x1");
    let y = || Term::var("y1");
    let query = FirstOrderQuery::new(
        "qsat2-qunsat2",
        Arc::new(Vocabulary::sigma_dnf()),
        Arc::new(Vocabulary::sigma_cnf()),
        1,
        Formula::True,
        vec![
            ("E".into(), Formula::rel("E", [x()])),
            ("P".into(), Formula::rel("M", [x(), y()])),
            ("N".into(), Formula::rel("Q", [x(), y()])),
        ],
        vec![],
    )?;
    Ok(NamedReduction {
        name: "qsat2-qunsat2".into(),
        source: Problem::Qsat2,
        target: Problem::Qunsat2,
        query,
        fidelity: Fidelity::Corrected,
        direct: Some(Arc::new(|a| {
            let d = decode_dnf(a)?;
            let clauses = d.implicants.iter().map(|s| LiteralSet { pos: s.neg.clone(), neg: s.pos.clone() });
            encode_cnf(&Qbf2Cnf { vars: d.vars, existential: d.existential, clauses: clauses.collect() })
        })),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::make_structure;

    #[test]
    fn example_structure() {
        let r = qsat2_to_qunsat2().unwrap();
        let a = make_structure(
            Arc::new(Vocabulary::sigma_dnf()),
            2,
            &[("E", vec![vec![0]]), ("Q", vec![vec![0, 0]]), ("M", vec![vec![0, 1]])],
            &[],
        )
        .unwrap();
        let b = r.apply(&a).unwrap();
        assert_eq!(b.relation("P").unwrap().iter().collect::<Vec<_>>(), vec![vec![0, 1]]);
        assert_eq!(b.relation("N").unwrap().iter().collect::<Vec<_>>(), vec![vec![0, 0]]);
        assert!(b.holds("E", &[0]) && !b.holds("E", &[1]));
        assert_eq!(r.apply_direct(&a).unwrap().unwrap(), b);
    }

    #[test]
    fn is_projection() {
        assert!(qsat2_to_qunsat2().unwrap().validate(8).is_projection);
    }
}
