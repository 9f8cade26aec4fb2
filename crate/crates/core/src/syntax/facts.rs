use super::ast::*;

/// Everything cited by the leaves of a proof, in traversal order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FactSummary {
    pub defs: Vec<MethodRef>,
    pub props: Vec<MethodRef>,
    pub types: Vec<String>,
    pub steps: Vec<StepLabel>,
    pub hyps: Vec<String>,
    pub admitted: bool,
}

pub fn collect_leaf_facts(proof: &Proof) -> FactSummary {
    let mut out = FactSummary::default();
    walk(proof, &mut out);
    out
}

fn walk(proof: &Proof, out: &mut FactSummary) {
    match proof {
        Proof::Leaf(Leaf::Admitted) => out.admitted = true,
        Proof::Leaf(Leaf::By(facts)) => {
            for f in facts {
                match f {
                    Fact::Definition(r) => out.defs.push(r.clone()),
                    Fact::Property(r) => out.props.push(r.clone()),
                    Fact::Type(t) => out.types.push(t.clone()),
                    Fact::Step(l) => out.steps.push(*l),
                    Fact::Hypothesis(h) => out.hyps.push(h.clone()),
                }
            }
        }
        Proof::Steps(steps) => {
            for s in steps {
                walk(&s.proof, out);
            }
        }
    }
}

/// Every formula written inside a proof (assumption types aside): hypotheses and goals.
pub fn proof_formulas(proof: &Proof) -> Vec<&Expr> {
    let mut out = Vec::new();
    fn go<'a>(p: &'a Proof, out: &mut Vec<&'a Expr>) {
        if let Proof::Steps(steps) = p {
            for s in steps {
                for (_, h) in &s.hypotheses {
                    out.push(h);
                }
                if let Goal::Prove(g) = &s.goal {
                    out.push(g);
                }
                go(&s.proof, out);
            }
        }
    }
    go(proof, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_source;

    fn proof_of(src: &str, species: &str, method: &str) -> Proof {
        let u = parse_source(src).unwrap();
        let m = u.find_species(species).unwrap().method(method).unwrap().clone();
        match m.def {
            MethodDef::Theorem { proof, .. } | MethodDef::ProofOf { proof } => proof,
            _ => panic!("not a proof"),
        }
    }

    #[test]
    fn admitted_leaf() {
        let f = collect_leaf_facts(&Proof::Leaf(Leaf::Admitted));
        assert!(f.admitted);
        assert!(f.defs.is_empty() && f.props.is_empty() && f.types.is_empty());
    }

    #[test]
    fn unfold_and_library_property() {
        let p = proof_of(
            "species O = signature gt : Self -> bool ; property p : all x : Self, gt (x) ; end ;;\n\
             species T = inherit O ; proof of p = by definition of gt property int_ltNotGt ; end ;;",
            "T",
            "p",
        );
        let f = collect_leaf_facts(&p);
        assert_eq!(f.defs, vec![MethodRef { coll: None, name: "gt".into() }]);
        assert_eq!(f.props, vec![MethodRef { coll: None, name: "int_ltNotGt".into() }]);
    }
}
