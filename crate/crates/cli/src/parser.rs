//! The expression language for simplicial sets and maps.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Delta(usize),
    Boundary(usize),
    Horn(usize, usize),
    Spine(usize),
    Nerve(String),
    Prod(Box<Expr>, Box<Expr>),
    Join(Box<Expr>, Box<Expr>),
    WideJoin(Box<Expr>, Box<Expr>),
    Skel(Box<Expr>, usize),
    Coprod(Box<Expr>, Box<Expr>),
    Pushout(Box<MapRef>, Box<MapRef>),
    Ident(String),
    Let(String, Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapRef {
    File(String),
    Terminal(Expr),
    Vertex(Expr, usize),
    Embed(Expr, Expr),
    HornIncl(usize, usize),
    BoundaryIncl(usize),
    SpineIncl(usize),
    FaceIncl(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at offset {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

const KEYWORDS: &[&str] = &[
    "delta", "boundary", "horn", "spine", "nerve", "prod", "join", "wjoin", "skel", "coprod", "pushout", "let", "in",
    "map", "terminal", "vertex", "embed", "hornincl", "bdryincl", "spineincl", "faceincl",
];

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

type Parse<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn err<T>(&self, offset: usize, message: impl Into<String>) -> Parse<T> {
        Err(ParseError { offset, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Parse<()> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => self.err(self.pos, format!("expected '{c}', found '{d}'")),
            None => self.err(self.pos, format!("expected '{c}', found end of input")),
        }
    }

    fn word(&mut self) -> Parse<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let len = rest.find(|c: char| !(c.is_alphanumeric() || c == '_')).unwrap_or(rest.len());
        if len == 0 || !rest.starts_with(|c: char| c.is_alphabetic() || c == '_') {
            return match rest.chars().next() {
                Some(c) => self.err(start, format!("expected an expression, found '{c}'")),
                None => self.err(start, "expected an expression, found end of input"),
            };
        }
        self.pos += len;
        Ok((start, &rest[..len]))
    }

    fn int(&mut self) -> Parse<usize> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let len = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        if len == 0 {
            return self.err(start, "expected an integer");
        }
        self.pos += len;
        rest[..len].parse().or_else(|_| self.err(start, "integer out of range"))
    }

    fn path(&mut self) -> Parse<String> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        if let Some(quoted) = rest.strip_prefix('"') {
            let Some(end) = quoted.find('"') else {
                return self.err(start, "unterminated path");
            };
            self.pos += end + 2;
            return Ok(quoted[..end].to_string());
        }
        let len = rest.find(|c: char| c.is_whitespace() || c == ',' || c == ')').unwrap_or(rest.len());
        if len == 0 {
            return self.err(start, "expected a path");
        }
        self.pos += len;
        Ok(rest[..len].to_string())
    }

    fn pair(&mut self) -> Parse<(Expr, Expr)> {
        self.expect('(')?;
        let a = self.expr()?;
        self.expect(',')?;
        let b = self.expr()?;
        self.expect(')')?;
        Ok((a, b))
    }

    fn expr(&mut self) -> Parse<Expr> {
        let (start, w) = self.word()?;
        let bx = Box::new;
        Ok(match w {
            "delta" => Expr::Delta(self.int()?),
            "boundary" => Expr::Boundary(self.int()?),
            "horn" => {
                let n = self.int()?;
                Expr::Horn(n, self.int()?)
            }
            "spine" => Expr::Spine(self.int()?),
            "nerve" => Expr::Nerve(self.path()?),
            "prod" | "join" | "wjoin" | "coprod" => {
                let (a, b) = self.pair()?;
                match w {
                    "prod" => Expr::Prod(bx(a), bx(b)),
                    "join" => Expr::Join(bx(a), bx(b)),
                    "wjoin" => Expr::WideJoin(bx(a), bx(b)),
                    _ => Expr::Coprod(bx(a), bx(b)),
                }
            }
            "skel" => {
                self.expect('(')?;
                let a = self.expr()?;
                self.expect(',')?;
                let n = self.int()?;
                self.expect(')')?;
                Expr::Skel(bx(a), n)
            }
            "pushout" => {
                self.expect('(')?;
                let f = self.mapref()?;
                self.expect(',')?;
                let g = self.mapref()?;
                self.expect(')')?;
                Expr::Pushout(Box::new(f), Box::new(g))
            }
            "let" => {
                let (at, name) = self.word()?;
                if KEYWORDS.contains(&name) {
                    return self.err(at, format!("'{name}' is reserved"));
                }
                self.expect('=')?;
                let bound = self.expr()?;
                let (at, kw) = self.word()?;
                if kw != "in" {
                    return self.err(at, format!("expected 'in', found '{kw}'"));
                }
                Expr::Let(name.to_string(), bx(bound), bx(self.expr()?))
            }
            _ if KEYWORDS.contains(&w) => return self.err(start, format!("'{w}' is not an expression")),
            _ => Expr::Ident(w.to_string()),
        })
    }

    fn mapref(&mut self) -> Parse<MapRef> {
        let (start, w) = self.word()?;
        Ok(match w {
            "map" => MapRef::File(self.path()?),
            "terminal" => {
                self.expect('(')?;
                let e = self.expr()?;
                self.expect(')')?;
                MapRef::Terminal(e)
            }
            "vertex" => {
                self.expect('(')?;
                let e = self.expr()?;
                self.expect(',')?;
                let v = self.int()?;
                self.expect(')')?;
                MapRef::Vertex(e, v)
            }
            "embed" => {
                let (a, b) = self.pair()?;
                MapRef::Embed(a, b)
            }
            "hornincl" => {
                let n = self.int()?;
                MapRef::HornIncl(n, self.int()?)
            }
            "bdryincl" => MapRef::BoundaryIncl(self.int()?),
            "spineincl" => MapRef::SpineIncl(self.int()?),
            "faceincl" => {
                let n = self.int()?;
                MapRef::FaceIncl(n, self.int()?)
            }
            _ => return self.err(start, format!("expected a map, found '{w}'")),
        })
    }
}

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { src, pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err(p.pos, "trailing input");
    }
    check_scopes(&e, &mut Vec::new())?;
    Ok(e)
}

fn check_scopes(e: &Expr, scope: &mut Vec<String>) -> Result<(), ParseError> {
    let unbound = |name: &str| ParseError { offset: 0, message: format!("unbound identifier '{name}'") };
    match e {
        Expr::Ident(name) if !scope.contains(name) => Err(unbound(name)),
        Expr::Let(name, bound, body) => {
            check_scopes(bound, scope)?;
            scope.push(name.clone());
            let r = check_scopes(body, scope);
            scope.pop();
            r
        }
        Expr::Prod(a, b) | Expr::Join(a, b) | Expr::WideJoin(a, b) | Expr::Coprod(a, b) => {
            check_scopes(a, scope)?;
            check_scopes(b, scope)
        }
        Expr::Skel(a, _) => check_scopes(a, scope),
        Expr::Pushout(f, g) => {
            for m in [f, g] {
                match &**m {
                    MapRef::Terminal(a) | MapRef::Vertex(a, _) => check_scopes(a, scope)?,
                    MapRef::Embed(a, b) => {
                        check_scopes(a, scope)?;
                        check_scopes(b, scope)?;
                    }
                    _ => {}
                }
            }
            Ok(())
        }
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_forms() {
        assert_eq!(
            parse("wjoin(delta 0, delta 1)").unwrap(),
            Expr::WideJoin(Box::new(Expr::Delta(0)), Box::new(Expr::Delta(1)))
        );
        assert_eq!(parse("horn 3 1").unwrap(), Expr::Horn(3, 1));
        assert_eq!(parse("  skel( prod(delta 1,delta 1) ,1 )").unwrap(), parse("skel(prod(delta 1, delta 1), 1)").unwrap());
    }

    #[test]
    fn error_offsets() {
        assert_eq!(parse("join(delta 0,").unwrap_err().offset, 13);
        assert_eq!(parse("delta").unwrap_err().offset, 5);
        assert_eq!(parse("delta 1 x").unwrap_err().offset, 8);
        assert_eq!(parse("frob(delta 1)").unwrap_err().offset, 4);
    }

    #[test]
    fn let_scoping() {
        let e = parse("let x = delta 1 in prod(x, x)").unwrap();
        assert!(matches!(e, Expr::Let(..)));
        assert!(parse("prod(x, delta 0)").is_err());
        assert!(parse("let delta = delta 1 in delta 0").is_err());
    }

    #[test]
    fn maprefs() {
        let e = parse("pushout(hornincl 2 1, terminal(horn 2 1))").unwrap();
        assert_eq!(
            e,
            Expr::Pushout(Box::new(MapRef::HornIncl(2, 1)), Box::new(MapRef::Terminal(Expr::Horn(2, 1))))
        );
        assert_eq!(parse(r#"nerve "a b.json""#).unwrap(), Expr::Nerve("a b.json".into()));
    }
}
