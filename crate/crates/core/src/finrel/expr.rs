//! A small expression language over named relations.
//!
//! Binding from loosest to tightest: `|`, then `&`, then the divisions
//! `\ / sd shrink thin`, then `;`, then the prefix operators
//! `conv dom ran power`. Binary operators associate to the left. `id` is
//! the identity on whichever carrier makes the surrounding operator typecheck.

use std::collections::BTreeMap;

use super::{Rel, RelError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("at column {pos}: {msg}")]
pub struct ExprError {
    pub pos: usize,
    pub msg: String,
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, ExprError> {
    Err(ExprError { pos, msg: msg.into() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Unary {
    Conv,
    Dom,
    Ran,
    Power,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Binary {
    Compose,
    Meet,
    Join,
    LeftDiv,
    RightDiv,
    SymDiv,
    Shrink,
    Thin,
}

impl Binary {
    fn symbol(self) -> &'static str {
        match self {
            Binary::Compose => ";",
            Binary::Meet => "&",
            Binary::Join => "|",
            Binary::LeftDiv => "\\",
            Binary::RightDiv => "/",
            Binary::SymDiv => "sd",
            Binary::Shrink => "shrink",
            Binary::Thin => "thin",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Var { name: String, pos: usize },
    Id { pos: usize },
    Unary { op: Unary, arg: Box<Expr>, pos: usize },
    Binary { op: Binary, lhs: Box<Expr>, rhs: Box<Expr>, pos: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        let pos = text[..i].chars().count() + 1;
        if c.is_whitespace() {
            chars.next();
        } else if c.is_alphanumeric() || c == '_' {
            let mut w = String::new();
            while let Some(&(_, c)) = chars.peek() {
                if !(c.is_alphanumeric() || c == '_') {
                    break;
                }
                w.push(c);
                chars.next();
            }
            out.push((Tok::Word(w), pos));
        } else if ";&|\\/()".contains(c) {
            out.push((Tok::Sym(c), pos));
            chars.next();
        } else {
            return err(pos, format!("unexpected character {c:?}"));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(_, p)| *p)
    }

    fn binary_at(&self, level: u8) -> Option<Binary> {
        let op = match self.peek()? {
            Tok::Sym('|') => Binary::Join,
            Tok::Sym('&') => Binary::Meet,
            Tok::Sym('\\') => Binary::LeftDiv,
            Tok::Sym('/') => Binary::RightDiv,
            Tok::Word(w) if w == "sd" => Binary::SymDiv,
            Tok::Word(w) if w == "shrink" => Binary::Shrink,
            Tok::Word(w) if w == "thin" => Binary::Thin,
            Tok::Sym(';') => Binary::Compose,
            _ => return None,
        };
        (level_of(op) == level).then_some(op)
    }

    fn binary(&mut self, level: u8) -> Result<Expr, ExprError> {
        if level == 4 {
            return self.unary();
        }
        let mut lhs = self.binary(level + 1)?;
        while let Some(op) = self.binary_at(level) {
            let pos = self.pos();
            self.at += 1;
            let rhs = self.binary(level + 1)?;
            lhs = Expr::Binary { op, lhs: Box::new(lhs), rhs: Box::new(rhs), pos };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        let pos = self.pos();
        let tok = self.peek().cloned();
        match tok {
            Some(Tok::Word(w)) => {
                let op = match w.as_str() {
                    "conv" => Some(Unary::Conv),
                    "dom" => Some(Unary::Dom),
                    "ran" => Some(Unary::Ran),
                    "power" => Some(Unary::Power),
                    _ => None,
                };
                self.at += 1;
                if let Some(op) = op {
                    return Ok(Expr::Unary { op, arg: Box::new(self.unary()?), pos });
                }
                match w.as_str() {
                    "id" => Ok(Expr::Id { pos }),
                    "sd" | "shrink" | "thin" => err(pos, format!("expected an operand, found {w:?}")),
                    _ => Ok(Expr::Var { name: w, pos }),
                }
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let e = self.binary(0)?;
                if self.peek() != Some(&Tok::Sym(')')) {
                    return err(self.pos(), "expected ')'");
                }
                self.at += 1;
                Ok(e)
            }
            Some(Tok::Sym(c)) => err(pos, format!("expected an operand, found {c:?}")),
            None => err(pos, "expected an operand, found end of input"),
        }
    }
}

fn level_of(op: Binary) -> u8 {
    match op {
        Binary::Join => 0,
        Binary::Meet => 1,
        Binary::LeftDiv | Binary::RightDiv | Binary::SymDiv | Binary::Shrink | Binary::Thin => 2,
        Binary::Compose => 3,
    }
}

impl Expr {
    pub fn parse(text: &str) -> Result<Expr, ExprError> {
        let toks = lex(text)?;
        let mut p = Parser { toks, at: 0, end: text.chars().count() + 1 };
        let e = p.binary(0)?;
        if p.at < p.toks.len() {
            return err(p.pos(), "unexpected trailing input");
        }
        Ok(e)
    }

    fn pos(&self) -> usize {
        match self {
            Expr::Var { pos, .. } | Expr::Id { pos } | Expr::Unary { pos, .. } | Expr::Binary { pos, .. } => *pos,
        }
    }

    /// Evaluates against `env`; `power_bound` caps powerset carriers.
    pub fn eval(&self, env: &BTreeMap<String, Rel>, power_bound: usize) -> Result<Rel, ExprError> {
        match self.eval_open(env, power_bound)? {
            Some(r) => Ok(r),
            None => err(self.pos(), "cannot tell which carrier id ranges over"),
        }
    }

    /// `None` stands for an `id` whose carrier is not yet known.
    fn eval_open(&self, env: &BTreeMap<String, Rel>, bound: usize) -> Result<Option<Rel>, ExprError> {
        let at = |pos: usize| move |e: RelError| ExprError { pos, msg: e.to_string() };
        match self {
            Expr::Var { name, pos } => match env.get(name) {
                Some(r) => Ok(Some(r.clone())),
                None => err(*pos, format!("unknown relation {name:?}")),
            },
            Expr::Id { .. } => Ok(None),
            Expr::Unary { op, arg, pos } => {
                let Some(r) = arg.eval_open(env, bound)? else {
                    return err(*pos, "cannot tell which carrier id ranges over");
                };
                Ok(Some(match op {
                    Unary::Conv => r.converse(),
                    Unary::Dom => r.domain(),
                    Unary::Ran => r.range(),
                    Unary::Power => r.power_transpose(bound).map_err(at(*pos))?.rel(),
                }))
            }
            Expr::Binary { op, lhs, rhs, pos } => {
                let (l, r) = (lhs.eval_open(env, bound)?, rhs.eval_open(env, bound)?);
                let apply = |a: &Rel, b: &Rel| apply(*op, a, b, bound);
                match (l, r) {
                    (Some(a), Some(b)) => apply(&a, &b).map(Some).map_err(at(*pos)),
                    (None, None) => Ok(None),
                    (None, Some(b)) => {
                        let first = apply(&Rel::id(b.tgt()), &b);
                        first.or_else(|_| apply(&Rel::id(b.src()), &b)).map(Some).map_err(at(*pos))
                    }
                    (Some(a), None) => {
                        let first = apply(&a, &Rel::id(a.src()));
                        first.or_else(|_| apply(&a, &Rel::id(a.tgt()))).map(Some).map_err(at(*pos))
                    }
                }
            }
        }
    }
}

fn apply(op: Binary, a: &Rel, b: &Rel, bound: usize) -> Result<Rel, RelError> {
    match op {
        Binary::Compose => a.compose(b),
        Binary::Meet => a.meet(b),
        Binary::Join => a.join(b),
        Binary::LeftDiv => a.left_divide(b),
        Binary::RightDiv => a.right_divide(b),
        Binary::SymDiv => a.sym_divide(b),
        Binary::Shrink => a.shrink(b),
        Binary::Thin => a.thin(b, bound),
    }
}

impl std::fmt::Display for Expr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Expr::Var { name, .. } => f.write_str(name),
            Expr::Id { .. } => f.write_str("id"),
            Expr::Unary { op, arg, .. } => {
                let name = match op {
                    Unary::Conv => "conv",
                    Unary::Dom => "dom",
                    Unary::Ran => "ran",
                    Unary::Power => "power",
                };
                write!(f, "{name} {arg}")
            }
            Expr::Binary { op, lhs, rhs, .. } => write!(f, "({lhs} {} {rhs})", op.symbol()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finrel::Carrier;

    fn env() -> BTreeMap<String, Rel> {
        let a = Carrier::numbered("A", 3);
        let r = Rel::from_fn(&a, &a, |t, s| t <= s);
        let s = Rel::from_fn(&a, &a, |t, s| t + 1 == s);
        BTreeMap::from([("R".to_string(), r), ("S".to_string(), s)])
    }

    #[test]
    fn precedence() {
        assert_eq!(Expr::parse("R | S & R ; S").unwrap().to_string(), "(R | (S & (R ; S)))");
        assert_eq!(Expr::parse("R sd S ; R").unwrap().to_string(), "(R sd (S ; R))");
        assert_eq!(Expr::parse("conv R ; S").unwrap().to_string(), "(conv R ; S)");
        assert_eq!(Expr::parse("R / S / R").unwrap().to_string(), "((R / S) / R)");
        assert_eq!(Expr::parse("R & S / R").unwrap().to_string(), "(R & (S / R))");
    }

    #[test]
    fn evaluates_against_the_kernel() {
        let env = env();
        let (r, s) = (&env["R"], &env["S"]);
        let e = Expr::parse("R ; conv S | S").unwrap().eval(&env, 4).unwrap();
        assert_eq!(e, r.compose(&s.converse()).unwrap().join(s).unwrap());
        let e = Expr::parse("R sd S").unwrap().eval(&env, 4).unwrap();
        assert_eq!(e, r.sym_divide(s).unwrap());
    }

    #[test]
    fn identity_takes_its_carrier_from_context() {
        let env = env();
        let e = Expr::parse("id & R").unwrap().eval(&env, 4).unwrap();
        assert_eq!(e, Rel::id(env["R"].src()));
        assert!(Expr::parse("id").unwrap().eval(&env, 4).is_err());
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(Expr::parse("R ; ").unwrap_err().pos, 5);
        assert_eq!(Expr::parse("R # S").unwrap_err().pos, 3);
        assert_eq!(Expr::parse("(R ; S").unwrap_err().pos, 7);
        assert_eq!(Expr::parse("R ; T").unwrap().eval(&env(), 4).unwrap_err().pos, 5);
    }
}
