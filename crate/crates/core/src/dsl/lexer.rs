use super::error::{DslError, Pos};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    LBrace,
    RBrace,
    Colon,
    Semi,
    Comma,
    Dot,
    Eq,
    /// `->`
    Arrow,
    /// `|->`
    MapsTo,
    /// `<-`
    BackArrow,
    /// `=>`
    DoubleArrow,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("name `{s}`"),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::MapsTo => "`|->`".into(),
            Tok::BackArrow => "`<-`".into(),
            Tok::DoubleArrow => "`=>`".into(),
        }
    }
}

const OPERATORS: [(&str, Tok); 4] = [
    ("|->", Tok::MapsTo),
    ("->", Tok::Arrow),
    ("<-", Tok::BackArrow),
    ("=>", Tok::DoubleArrow),
];

/// Characters that always end a bare name.
fn is_delimiter(c: char) -> bool {
    c.is_whitespace() || "{}:;,.=|\"#".contains(c)
}

fn starts_operator(s: &str) -> bool {
    OPERATORS.iter().any(|(op, _)| s.starts_with(op)) || s.starts_with("//")
}

/// A bare name needs no quoting when it lexes back to itself.
pub(crate) fn is_bare(name: &str) -> bool {
    !name.is_empty()
        && !name.chars().any(is_delimiter)
        && name.char_indices().all(|(i, _)| !starts_operator(&name[i..]))
}

pub(crate) fn tokenize(src: &str) -> Result<Vec<(Tok, Pos)>, DslError> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let mut rest = src;
    let advance = |s: &str, line: &mut usize, col: &mut usize| {
        for c in s.chars() {
            if c == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
        }
    };
    while let Some(c) = rest.chars().next() {
        let pos = Pos { line, col };
        if c.is_whitespace() {
            advance(&rest[..c.len_utf8()], &mut line, &mut col);
            rest = &rest[c.len_utf8()..];
            continue;
        }
        if c == '#' || rest.starts_with("//") {
            let end = rest.find('\n').unwrap_or(rest.len());
            advance(&rest[..end], &mut line, &mut col);
            rest = &rest[end..];
            continue;
        }
        if let Some((op, tok)) = OPERATORS.iter().find(|(op, _)| rest.starts_with(op)) {
            out.push((tok.clone(), pos));
            advance(op, &mut line, &mut col);
            rest = &rest[op.len()..];
            continue;
        }
        let single = match c {
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            ':' => Some(Tok::Colon),
            ';' => Some(Tok::Semi),
            ',' => Some(Tok::Comma),
            '.' => Some(Tok::Dot),
            '=' => Some(Tok::Eq),
            _ => None,
        };
        if let Some(tok) = single {
            out.push((tok, pos));
            advance(&rest[..1], &mut line, &mut col);
            rest = &rest[1..];
            continue;
        }
        if c == '"' {
            let mut name = String::new();
            let mut chars = rest.char_indices().skip(1);
            let mut end = None;
            while let Some((i, ch)) = chars.next() {
                match ch {
                    '"' => {
                        end = Some(i + 1);
                        break;
                    }
                    '\\' => match chars.next() {
                        Some((_, e @ ('"' | '\\'))) => name.push(e),
                        Some((_, 'n')) => name.push('\n'),
                        _ => return Err(DslError::syntax(pos, "bad escape in quoted name")),
                    },
                    _ => name.push(ch),
                }
            }
            let Some(end) = end else {
                return Err(DslError::syntax(pos, "unterminated quoted name"));
            };
            out.push((Tok::Ident(name), pos));
            advance(&rest[..end], &mut line, &mut col);
            rest = &rest[end..];
            continue;
        }
        if c == '|' {
            return Err(DslError::syntax(pos, "stray `|` (expected `|->`)"));
        }
        let mut end = 0;
        for (i, ch) in rest.char_indices() {
            if is_delimiter(ch) || (i > 0 && starts_operator(&rest[i..])) {
                break;
            }
            end = i + ch.len_utf8();
        }
        out.push((Tok::Ident(rest[..end].to_string()), pos));
        advance(&rest[..end], &mut line, &mut col);
        rest = &rest[end..];
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        tokenize(s).unwrap().into_iter().map(|(t, _)| t).collect()
    }

    #[test]
    fn names_with_angle_brackets() {
        assert_eq!(
            toks("0<1: 0 -> 1"),
            vec![
                Tok::Ident("0<1".into()),
                Tok::Colon,
                Tok::Ident("0".into()),
                Tok::Arrow,
                Tok::Ident("1".into())
            ]
        );
        assert_eq!(
            toks("x<-y"),
            vec![Tok::Ident("x".into()), Tok::BackArrow, Tok::Ident("y".into())]
        );
    }

    #[test]
    fn quoted_names_and_comments() {
        assert_eq!(
            toks("\"(a,b)\" # note\n |-> \"q\\\"\""),
            vec![Tok::Ident("(a,b)".into()), Tok::MapsTo, Tok::Ident("q\"".into())]
        );
    }

    #[test]
    fn positions_are_one_based() {
        let t = tokenize("a\n  b").unwrap();
        assert_eq!(t[1].1, Pos { line: 2, col: 3 });
    }

    #[test]
    fn bare_names() {
        assert!(is_bare("id_•"));
        assert!(is_bare("0<1"));
        assert!(!is_bare("u.v"));
        assert!(!is_bare("a->b"));
        assert!(!is_bare(""));
        assert!(!is_bare("(a,b)"));
    }
}
