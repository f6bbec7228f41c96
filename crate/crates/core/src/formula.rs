//! Multi-modal formulas, modal depth and truth evaluation.

use std::fmt;

use crate::error::{Error, Result};
use crate::model::{PointedModel, WorldId};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Top,
    Bot,
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    /// Necessity over one modality index.
    Box(String, Box<Formula>),
    /// Possibility, `<i>phi == ~[i]~phi`.
    Diamond(String, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    pub fn negated(self) -> Self {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, other: Formula) -> Self {
        Formula::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Formula) -> Self {
        Formula::Or(Box::new(self), Box::new(other))
    }

    pub fn boxed(modality: impl Into<String>, inner: Formula) -> Self {
        Formula::Box(modality.into(), Box::new(inner))
    }

    pub fn diamond(modality: impl Into<String>, inner: Formula) -> Self {
        Formula::Diamond(modality.into(), Box::new(inner))
    }

    /// `<i>^n inner`.
    pub fn diamonds(modality: &str, n: usize, inner: Formula) -> Self {
        (0..n).fold(inner, |f, _| Formula::diamond(modality, f))
    }

    /// Conjunction of all items; `top` when empty.
    pub fn conjunction(items: impl IntoIterator<Item = Formula>) -> Self {
        items
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::Top)
    }

    /// Disjunction of all items; `bot` when empty.
    pub fn disjunction(items: impl IntoIterator<Item = Formula>) -> Self {
        items
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::Bot)
    }

    /// Rewrites `|` and `<i>` into `~`, `&` and `[i]`. Constants are kept.
    pub fn expand(&self) -> Formula {
        match self {
            Formula::Top => Formula::Top,
            Formula::Bot => Formula::Bot,
            Formula::Atom(p) => Formula::Atom(p.clone()),
            Formula::Not(f) => f.expand().negated(),
            Formula::And(a, b) => a.expand().and(b.expand()),
            Formula::Or(a, b) => a.expand().negated().and(b.expand().negated()).negated(),
            Formula::Box(i, f) => Formula::boxed(i.clone(), f.expand()),
            Formula::Diamond(i, f) => Formula::boxed(i.clone(), f.expand().negated()).negated(),
        }
    }

    /// Maximum nesting of modal operators.
    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Top | Formula::Bot | Formula::Atom(_) => 0,
            Formula::Not(f) => f.modal_depth(),
            Formula::And(a, b) | Formula::Or(a, b) => a.modal_depth().max(b.modal_depth()),
            Formula::Box(_, f) | Formula::Diamond(_, f) => 1 + f.modal_depth(),
        }
    }

    fn collect_modalities<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Formula::Top | Formula::Bot | Formula::Atom(_) => {}
            Formula::Not(f) => f.collect_modalities(out),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_modalities(out);
                b.collect_modalities(out);
            }
            Formula::Box(i, f) | Formula::Diamond(i, f) => {
                out.push(i);
                f.collect_modalities(out);
            }
        }
    }

    /// Modality indices mentioned anywhere in the formula.
    pub fn modalities(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_modalities(&mut out);
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Truth set of `phi` over every world of `m`, indexed by world.
pub fn extension(m: &PointedModel, phi: &Formula) -> Result<Vec<bool>> {
    for i in phi.modalities() {
        if !m.has_modality(i) {
            return Err(Error::UnknownModality(i.to_string()));
        }
    }
    Ok(extension_unchecked(m, phi))
}

fn extension_unchecked(m: &PointedModel, phi: &Formula) -> Vec<bool> {
    let n = m.world_count();
    match phi {
        Formula::Top => vec![true; n],
        Formula::Bot => vec![false; n],
        Formula::Atom(p) => m.worlds().map(|w| m.holds(w, p)).collect(),
        Formula::Not(f) => extension_unchecked(m, f).into_iter().map(|b| !b).collect(),
        Formula::And(a, b) => {
            let (ea, eb) = (extension_unchecked(m, a), extension_unchecked(m, b));
            ea.into_iter().zip(eb).map(|(x, y)| x && y).collect()
        }
        Formula::Or(a, b) => {
            let (ea, eb) = (extension_unchecked(m, a), extension_unchecked(m, b));
            ea.into_iter().zip(eb).map(|(x, y)| x || y).collect()
        }
        Formula::Box(i, f) => {
            let inner = extension_unchecked(m, f);
            m.worlds()
                .map(|w| m.successors(i, w).iter().all(|v| inner[v.0]))
                .collect()
        }
        Formula::Diamond(i, f) => {
            let inner = extension_unchecked(m, f);
            m.worlds()
                .map(|w| m.successors(i, w).iter().any(|v| inner[v.0]))
                .collect()
        }
    }
}

/// Whether `(m, w)` satisfies `phi`.
pub fn evaluate(m: &PointedModel, w: WorldId, phi: &Formula) -> Result<bool> {
    if !m.contains(w) {
        return Err(Error::UnknownWorld(w.to_string()));
    }
    Ok(extension(m, phi)?[w.0])
}

/// Parenthesised rendering in the textual formula grammar.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Top => f.write_str("top"),
            Formula::Bot => f.write_str("bot"),
            Formula::Atom(p) => f.write_str(p),
            Formula::Not(g) => write!(f, "~{g}"),
            Formula::And(a, b) => write!(f, "({a} & {b})"),
            Formula::Or(a, b) => write!(f, "({a} | {b})"),
            Formula::Box(i, g) => write!(f, "[{i}]{g}"),
            Formula::Diamond(i, g) => write!(f, "<{i}>{g}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_chain, gen_figure, Figure, DEFAULT_MODALITY as A};

    #[test]
    fn modal_depth_examples() {
        assert_eq!(Formula::atom("p").modal_depth(), 0);
        for h in 0..6 {
            let f = Formula::diamonds(A, h, Formula::boxed(A, Formula::Bot));
            assert_eq!(f.modal_depth(), h + 1);
            assert_eq!(f.expand().modal_depth(), h + 1);
        }
        let f = Formula::boxed("1", Formula::atom("p")).and(Formula::atom("q"));
        assert_eq!(f.modal_depth(), 1);
        assert_eq!(f.clone().negated().modal_depth(), 1);
    }

    #[test]
    fn evaluate_examples() {
        let n1 = gen_figure(Figure::N1);
        let w1 = n1.require("w1").unwrap();
        assert!(evaluate(&n1, w1, &Formula::diamond(A, Formula::atom("r"))).unwrap());
        for w in n1.worlds() {
            assert!(evaluate(&n1, w, &Formula::Top).unwrap());
            assert!(!evaluate(&n1, w, &Formula::Bot).unwrap());
        }
        for k in 0..8 {
            let chain = gen_chain(k);
            let f = Formula::diamonds(A, k, Formula::boxed(A, Formula::Bot));
            assert!(evaluate(&chain, chain.designated(), &f).unwrap());
            let longer = Formula::diamonds(A, k + 1, Formula::boxed(A, Formula::Bot));
            assert!(!evaluate(&chain, chain.designated(), &longer).unwrap());
        }
    }

    #[test]
    fn evaluate_errors() {
        let m = gen_chain(1);
        assert!(matches!(
            evaluate(&m, WorldId(9), &Formula::Top),
            Err(Error::UnknownWorld(_))
        ));
        assert_eq!(
            evaluate(&m, WorldId(0), &Formula::boxed("zz", Formula::Top)),
            Err(Error::UnknownModality("zz".into()))
        );
    }

    #[test]
    fn abbreviations_agree_with_expansion() {
        let m = gen_figure(Figure::Fig2);
        let formulas = [
            Formula::diamond(A, Formula::atom("q")),
            Formula::diamond(A, Formula::boxed(A, Formula::atom("p")).or(Formula::Bot)),
            Formula::Top.and(Formula::diamond(A, Formula::Top).negated()),
            Formula::atom("p").or(Formula::atom("q")),
        ];
        for f in &formulas {
            assert_eq!(
                extension(&m, f).unwrap(),
                extension(&m, &f.expand()).unwrap()
            );
            let dual = Formula::boxed(A, f.clone().negated()).negated();
            let dia = Formula::diamond(A, f.clone());
            assert_eq!(extension(&m, &dia).unwrap(), extension(&m, &dual).unwrap());
        }
    }

    #[test]
    fn display_uses_text_grammar() {
        let f = Formula::diamond(
            "a",
            Formula::atom("p").and(Formula::boxed("b", Formula::Bot)),
        )
        .or(Formula::Top.negated());
        assert_eq!(f.to_string(), "(<a>(p & [b]bot) | ~top)");
    }
}
