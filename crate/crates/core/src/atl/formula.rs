use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TemplateKind {
    Next,
    Until,
    Release,
    Gffg,
    Gffgg,
    Gu,
    Gxor,
}

impl TemplateKind {
    pub const ALL: [TemplateKind; 7] = [
        TemplateKind::Next,
        TemplateKind::Until,
        TemplateKind::Release,
        TemplateKind::Gffg,
        TemplateKind::Gffgg,
        TemplateKind::Gu,
        TemplateKind::Gxor,
    ];

    pub fn arity(self) -> usize {
        match self {
            TemplateKind::Next | TemplateKind::Gxor => 1,
            TemplateKind::Gffgg => 3,
            _ => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TemplateKind::Next => "next",
            TemplateKind::Until => "until",
            TemplateKind::Release => "release",
            TemplateKind::Gffg => "gffg",
            TemplateKind::Gffgg => "gffgg",
            TemplateKind::Gu => "gu",
            TemplateKind::Gxor => "gxor",
        }
    }
}

impl FromStr for TemplateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TemplateKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Fragment(format!("unknown path template {s:?}")))
    }
}

/// A path template applied to state formulas.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathFormula {
    pub kind: TemplateKind,
    pub args: Vec<StateFormula>,
}

impl PathFormula {
    pub fn new(kind: TemplateKind, args: Vec<StateFormula>) -> Result<PathFormula> {
        if args.len() != kind.arity() {
            return Err(Error::Fragment(format!("{} takes {} arguments, got {}", kind.name(), kind.arity(), args.len())));
        }
        Ok(PathFormula { kind, args })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum StateFormula {
    True,
    False,
    Atom(String),
    Not(Box<StateFormula>),
    Or(Box<StateFormula>, Box<StateFormula>),
    And(Box<StateFormula>, Box<StateFormula>),
    /// Coalition given by agent names.
    Coal(Vec<String>, Box<PathFormula>),
}

impl StateFormula {
    pub fn atom(p: &str) -> StateFormula {
        StateFormula::Atom(p.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: StateFormula) -> StateFormula {
        StateFormula::Not(Box::new(f))
    }

    pub fn or(a: StateFormula, b: StateFormula) -> StateFormula {
        StateFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn and(a: StateFormula, b: StateFormula) -> StateFormula {
        StateFormula::And(Box::new(a), Box::new(b))
    }

    /// Panics if the arity is wrong; use [`PathFormula::new`] for checked input.
    pub fn coal(agents: &[&str], kind: TemplateKind, args: Vec<StateFormula>) -> StateFormula {
        let path = PathFormula::new(kind, args).expect("template arity");
        StateFormula::Coal(agents.iter().map(|a| a.to_string()).collect(), Box::new(path))
    }

    /// Nesting depth of coalition modalities.
    pub fn modal_depth(&self) -> usize {
        match self {
            StateFormula::True | StateFormula::False | StateFormula::Atom(_) => 0,
            StateFormula::Not(f) => f.modal_depth(),
            StateFormula::Or(a, b) | StateFormula::And(a, b) => a.modal_depth().max(b.modal_depth()),
            StateFormula::Coal(_, p) => 1 + p.args.iter().map(StateFormula::modal_depth).max().unwrap_or(0),
        }
    }

    /// Templates used anywhere in the formula.
    pub fn templates(&self) -> BTreeSet<TemplateKind> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let StateFormula::Coal(_, p) = f {
                out.insert(p.kind);
            }
        });
        out
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let StateFormula::Atom(p) = f {
                out.insert(p.clone());
            }
        });
        out
    }

    fn visit(&self, f: &mut impl FnMut(&StateFormula)) {
        f(self);
        match self {
            StateFormula::Not(a) => a.visit(f),
            StateFormula::Or(a, b) | StateFormula::And(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            StateFormula::Coal(_, p) => p.args.iter().for_each(|a| a.visit(f)),
            _ => {}
        }
    }
}

impl fmt::Display for StateFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateFormula::True => f.write_str("true"),
            StateFormula::False => f.write_str("false"),
            StateFormula::Atom(p) => f.write_str(p),
            StateFormula::Not(a) => write!(f, "(not {a})"),
            StateFormula::Or(a, b) => write!(f, "(or {a} {b})"),
            StateFormula::And(a, b) => write!(f, "(and {a} {b})"),
            StateFormula::Coal(c, p) => {
                write!(f, "(coal ({}) ({}", c.join(" "), p.kind.name())?;
                for a in &p.args {
                    write!(f, " {a}")?;
                }
                f.write_str("))")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Sexp {
    Sym(String),
    List(Vec<Sexp>),
}

fn tokenize(s: &str) -> Vec<String> {
    s.replace('(', " ( ").replace(')', " ) ").split_whitespace().map(str::to_string).collect()
}

fn read(tokens: &[String], pos: &mut usize) -> Result<Sexp> {
    let t = tokens.get(*pos).ok_or_else(|| Error::Parse("unexpected end of formula".into()))?;
    *pos += 1;
    match t.as_str() {
        "(" => {
            let mut items = Vec::new();
            while tokens.get(*pos).map(String::as_str) != Some(")") {
                if *pos >= tokens.len() {
                    return Err(Error::Parse("unbalanced parenthesis".into()));
                }
                items.push(read(tokens, pos)?);
            }
            *pos += 1;
            Ok(Sexp::List(items))
        }
        ")" => Err(Error::Parse("unexpected )".into())),
        sym => Ok(Sexp::Sym(sym.to_string())),
    }
}

const KEYWORDS: [&str; 5] = ["not", "or", "and", "coal", "true"];

fn state(e: &Sexp) -> Result<StateFormula> {
    match e {
        Sexp::Sym(s) if s == "true" => Ok(StateFormula::True),
        Sexp::Sym(s) if s == "false" => Ok(StateFormula::False),
        Sexp::Sym(s) if KEYWORDS.contains(&s.as_str()) || s.parse::<TemplateKind>().is_ok() => {
            Err(Error::Parse(format!("{s:?} is not an atom")))
        }
        Sexp::Sym(s) => Ok(StateFormula::Atom(s.clone())),
        Sexp::List(items) => {
            let (head, rest) = match items.split_first() {
                Some((Sexp::Sym(h), rest)) => (h.as_str(), rest),
                _ => return Err(Error::Parse("expected an operator".into())),
            };
            match (head, rest) {
                ("not", [a]) => Ok(StateFormula::not(state(a)?)),
                ("or", [a, b]) => Ok(StateFormula::or(state(a)?, state(b)?)),
                ("and", [a, b]) => Ok(StateFormula::and(state(a)?, state(b)?)),
                ("coal", [Sexp::List(agents), Sexp::List(path)]) => {
                    let agents = agents
                        .iter()
                        .map(|a| match a {
                            Sexp::Sym(s) => Ok(s.clone()),
                            Sexp::List(_) => Err(Error::Parse("agent names must be symbols".into())),
                        })
                        .collect::<Result<Vec<_>>>()?;
                    let (kind, args) = match path.split_first() {
                        Some((Sexp::Sym(k), args)) => (k.parse::<TemplateKind>()?, args),
                        _ => return Err(Error::Parse("expected a path template".into())),
                    };
                    let args = args.iter().map(state).collect::<Result<Vec<_>>>()?;
                    Ok(StateFormula::Coal(agents, Box::new(PathFormula::new(kind, args)?)))
                }
                (op, _) if op.parse::<TemplateKind>().is_ok() => {
                    Err(Error::Fragment(format!("path template {op} outside a coalition")))
                }
                (op, _) => Err(Error::Parse(format!("malformed ({op} ...)"))),
            }
        }
    }
}

impl FromStr for StateFormula {
    type Err = Error;

    /// S-expressions: `p`, `true`, `false`, `(not f)`, `(or f g)`, `(and f g)`,
    /// `(coal (agents...) (template args...))`.
    fn from_str(s: &str) -> Result<StateFormula> {
        let tokens = tokenize(s);
        let mut pos = 0;
        let e = read(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(Error::Parse("trailing input after formula".into()));
        }
        state(&e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        for s in ["(coal (1 2) (gu p q))", "(not (coal () (until p q)))", "(or true (and p (not q)))"] {
            let f: StateFormula = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
        let f: StateFormula = "(coal (1) (gffgg p (coal () (next q)) r))".parse().unwrap();
        assert_eq!(f.modal_depth(), 2);
    }

    #[test]
    fn fragment_errors() {
        assert!(matches!("(coal (1) (gu p))".parse::<StateFormula>(), Err(Error::Fragment(_))));
        assert!(matches!("(coal (1) (gf p))".parse::<StateFormula>(), Err(Error::Fragment(_))));
        assert!(matches!("(gu p q)".parse::<StateFormula>(), Err(Error::Fragment(_))));
        assert!("(coal (1) (and (gffg p q) (gffg q p)))".parse::<StateFormula>().is_err());
        assert!("(or p".parse::<StateFormula>().is_err());
        assert!("p q".parse::<StateFormula>().is_err());
    }
}
