use std::fmt::Write as _;

use super::{Carrier, Rel, RelError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FixtureError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Element { line: usize, source: RelError },
}

/// A relation read from fixture text, with its optional name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedRel {
    pub name: Option<String>,
    pub rel: Rel,
}

fn syntax(line: usize, msg: impl Into<String>) -> FixtureError {
    FixtureError::Syntax { line, msg: msg.into() }
}

/// `Name(n)` to a carrier labelled `name1..namen`.
fn parse_carrier(text: &str, line: usize) -> Result<Carrier, FixtureError> {
    let text = text.trim();
    let open = text.find('(').ok_or_else(|| syntax(line, format!("expected Name(n), got {text:?}")))?;
    if !text.ends_with(')') {
        return Err(syntax(line, format!("expected Name(n), got {text:?}")));
    }
    let name = text[..open].trim();
    if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
        return Err(syntax(line, format!("bad carrier name {name:?}")));
    }
    let n: usize = text[open + 1..text.len() - 1]
        .trim()
        .parse()
        .map_err(|_| syntax(line, format!("bad carrier size in {text:?}")))?;
    Ok(Carrier::numbered(name, n))
}

/// Reads every relation block in `text`.
///
/// A block is a header `rel [Name:] Src(n) -> Tgt(m)` followed by `s -> t`
/// lines over the labels `src1..srcn` / `tgt1..tgtm`, ended by a blank line
/// or end of input. Lines starting with `#` are ignored.
pub fn parse_fixtures(text: &str) -> Result<Vec<NamedRel>, FixtureError> {
    let mut out = Vec::new();
    let mut current: Option<NamedRel> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim();
        if l.starts_with('#') {
            continue;
        }
        if l.is_empty() {
            out.extend(current.take());
            continue;
        }
        if let Some(header) = l.strip_prefix("rel ") {
            if let Some(done) = current.take() {
                out.push(done);
            }
            let (name, sig) = match header.split_once(':') {
                Some((n, rest)) => (Some(n.trim().to_string()), rest),
                None => (None, header),
            };
            let (src, tgt) = sig.split_once("->").ok_or_else(|| syntax(line, "header needs Src(n) -> Tgt(m)"))?;
            let src = parse_carrier(src, line)?;
            let tgt = parse_carrier(tgt, line)?;
            current = Some(NamedRel { name, rel: Rel::empty(&src, &tgt) });
            continue;
        }
        let cur = current.as_mut().ok_or_else(|| syntax(line, "pair line outside a rel block"))?;
        let (s, t) = l.split_once("->").ok_or_else(|| syntax(line, format!("expected `s -> t`, got {l:?}")))?;
        let s = cur.rel.src().index_of(s.trim()).map_err(|source| FixtureError::Element { line, source })?;
        let t = cur.rel.tgt().index_of(t.trim()).map_err(|source| FixtureError::Element { line, source })?;
        cur.rel.set(t, s);
    }
    out.extend(current);
    Ok(out)
}

/// Writes `r` in fixture format, pairs ordered by source then target.
pub fn write_fixture(name: Option<&str>, r: &Rel) -> String {
    let mut s = String::new();
    match name {
        Some(n) => writeln!(s, "rel {n}: {} -> {}", r.src().describe(), r.tgt().describe()),
        None => writeln!(s, "rel {} -> {}", r.src().describe(), r.tgt().describe()),
    }
    .unwrap();
    let conv = r.converse();
    for a in 0..r.src().len() {
        for b in conv.row_indices(a) {
            writeln!(s, "{} -> {}", r.src().elem(a), r.tgt().elem(b)).unwrap();
        }
    }
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "rel A(3) -> B(2)\na1 -> b2\na3 -> b1\na3 -> b2\n\n";
        let rels = parse_fixtures(text).unwrap();
        assert_eq!(rels.len(), 1);
        assert_eq!(write_fixture(None, &rels[0].rel), text);
    }

    #[test]
    fn named_blocks_and_comments() {
        let text = "# two relations\nrel R: A(1) -> A(1)\na1 -> a1\nrel S: A(1) -> B(1)\n";
        let rels = parse_fixtures(text).unwrap();
        assert_eq!(rels.len(), 2);
        assert_eq!(rels[0].name.as_deref(), Some("R"));
        assert!(rels[1].rel.is_empty());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_fixtures("rel A(2) -> B(2)\na1 -> b9\n").unwrap_err();
        assert!(err.to_string().starts_with("line 2:"), "{err}");
        assert!(matches!(parse_fixtures("a1 -> b1"), Err(FixtureError::Syntax { line: 1, .. })));
        assert!(parse_fixtures("rel A2 -> B(2)").is_err());
    }
}
