use super::{Term, TermKind};
use crate::finrel::Carrier;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("at column {pos}: {msg}")]
pub struct LiteralError {
    pub pos: usize,
    pub msg: String,
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, LiteralError> {
        Err(LiteralError { pos: self.pos + 1, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.text[self.pos..].chars().next().unwrap().len_utf8();
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), LiteralError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn word(&mut self) -> Result<&'a str, LiteralError> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest.find(|c: char| !(c.is_alphanumeric() || c == '_' || c == '-')).unwrap_or(rest.len());
        if len == 0 {
            return self.err("expected a label or constructor");
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn label(&mut self, a: &Carrier) -> Result<usize, LiteralError> {
        let start = self.pos;
        let w = self.word()?;
        a.index_of(w).map_err(|_| LiteralError { pos: start + 1, msg: format!("{w:?} is not in {}", a.describe()) })
    }
}

/// Parses `[2,1,3]`, `node(a, l, r)` / `empty`, or `leaf n` / `fork(l, r)`
/// according to `kind`, with payload labels drawn from `a`.
pub fn parse_term(kind: TermKind, a: &Carrier, text: &str) -> Result<Term, LiteralError> {
    let mut cur = Cursor { text, pos: 0 };
    let t = match kind {
        TermKind::List => parse_list(&mut cur, a)?,
        TermKind::NonEmptyList => {
            let start = cur.pos;
            let xs = parse_items(&mut cur, a)?;
            if xs.is_empty() {
                return Err(LiteralError { pos: start + 1, msg: "expected a non-empty list".into() });
            }
            Term::list1(&xs)
        }
        TermKind::NodeTree => parse_node(&mut cur, a)?,
        TermKind::LeafTree => parse_leaf(&mut cur, a)?,
        TermKind::Other => return cur.err("no literal syntax for this base"),
    };
    cur.skip_ws();
    if cur.pos < text.len() {
        return cur.err("trailing input");
    }
    Ok(t)
}

fn parse_list(cur: &mut Cursor, a: &Carrier) -> Result<Term, LiteralError> {
    Ok(Term::list(&parse_items(cur, a)?))
}

fn parse_items(cur: &mut Cursor, a: &Carrier) -> Result<Vec<usize>, LiteralError> {
    cur.expect('[')?;
    let mut xs = Vec::new();
    if !cur.eat(']') {
        loop {
            xs.push(cur.label(a)?);
            if cur.eat(']') {
                break;
            }
            cur.expect(',')?;
        }
    }
    Ok(xs)
}

fn parse_node(cur: &mut Cursor, a: &Carrier) -> Result<Term, LiteralError> {
    let start = cur.pos;
    match cur.word()? {
        "empty" => Ok(Term::empty()),
        "node" => {
            cur.expect('(')?;
            let x = cur.label(a)?;
            cur.expect(',')?;
            let l = parse_node(cur, a)?;
            cur.expect(',')?;
            let r = parse_node(cur, a)?;
            cur.expect(')')?;
            Ok(Term::node(x, l, r))
        }
        w => Err(LiteralError { pos: start + 1, msg: format!("expected empty or node, got {w:?}") }),
    }
}

fn parse_leaf(cur: &mut Cursor, a: &Carrier) -> Result<Term, LiteralError> {
    let start = cur.pos;
    match cur.word()? {
        "leaf" => Ok(Term::leaf(cur.label(a)?)),
        "fork" => {
            cur.expect('(')?;
            let l = parse_leaf(cur, a)?;
            cur.expect(',')?;
            let r = parse_leaf(cur, a)?;
            cur.expect(')')?;
            Ok(Term::fork(l, r))
        }
        w => Err(LiteralError { pos: start + 1, msg: format!("expected leaf or fork, got {w:?}") }),
    }
}

fn payload(t: &Term) -> usize {
    fn go(l: &super::Layer) -> Option<usize> {
        use super::Layer::*;
        match l {
            Atom(a) => Some(*a),
            Inl(v) | Inr(v) => go(v),
            Pair(u, v) => go(u).or_else(|| go(v)),
            Rec(_) => None,
        }
    }
    go(&t.layer).expect("payload present")
}

/// Inverse of [`parse_term`], in the same format the bounded carriers use.
pub fn render_term(kind: TermKind, a: &Carrier, t: &Term) -> String {
    match kind {
        TermKind::List => {
            let mut xs = Vec::new();
            let mut cur = t;
            while let Some(next) = cur.kids.first() {
                xs.push(a.elem(payload(cur)).to_string());
                cur = next;
            }
            format!("[{}]", xs.join(","))
        }
        TermKind::NodeTree => match t.kids.as_slice() {
            [l, r] => format!("node({}, {}, {})", a.elem(payload(t)), render_term(kind, a, l), render_term(kind, a, r)),
            _ => "empty".into(),
        },
        TermKind::LeafTree => match t.kids.as_slice() {
            [l, r] => format!("fork({}, {})", render_term(kind, a, l), render_term(kind, a, r)),
            _ => format!("leaf {}", a.elem(payload(t))),
        },
        TermKind::NonEmptyList => {
            let mut xs = Vec::new();
            let mut cur = t;
            loop {
                xs.push(a.elem(payload(cur)).to_string());
                match cur.kids.first() {
                    Some(next) => cur = next,
                    None => break,
                }
            }
            format!("[{}]", xs.join(","))
        }
        TermKind::Other => format!("{:?}", t),
    }
}
