//! Recursive-descent parser for the knot DSL:
//!
//! ```text
//! Expr := Term (('#' | '+') Term)*
//! Term := INT '*' Term | 'm(' Expr ')' | 'T(' INT ',' INT ')' | 'K(' INT ',' INT ')' | 'U' | NAME
//! ```
//!
//! `k*X` expands to a connected sum of k copies of X.

use super::{Corpus, KnotError, KnotExpr};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Int(i64),
    Sym(char),
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, KnotError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if "#+*(),".contains(c) {
            out.push((Tok::Sym(c), pos));
            i += 1;
            continue;
        }
        let negative = c == '-';
        if negative && !chars.get(i + 1).is_some_and(|(_, d)| d.is_ascii_digit()) {
            return Err(KnotError::Syntax {
                pos,
                msg: "'-' must precede a digit".into(),
            });
        }
        if c.is_alphanumeric() || c == '_' || negative {
            let start = i;
            i += 1;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let end = chars.get(i).map_or(src.len(), |(p, _)| *p);
            let word = &src[pos..end];
            let tok = if word.trim_start_matches('-').chars().all(|d| d.is_ascii_digit()) {
                let n = word.parse::<i64>().map_err(|_| KnotError::Syntax {
                    pos,
                    msg: format!("integer {word} out of range"),
                })?;
                Tok::Int(n)
            } else if negative {
                return Err(KnotError::Syntax {
                    pos: chars[start].0,
                    msg: format!("bad token {word:?}"),
                });
            } else {
                Tok::Word(word.to_string())
            };
            out.push((tok, pos));
            continue;
        }
        return Err(KnotError::Syntax {
            pos,
            msg: format!("unexpected character {c:?}"),
        });
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

impl Lexer {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, c: char) -> Result<(), KnotError> {
        let pos = self.pos();
        match self.next() {
            Tok::Sym(d) if d == c => Ok(()),
            t => Err(KnotError::Syntax {
                pos,
                msg: format!("expected '{c}', found {}", describe(&t)),
            }),
        }
    }

    fn int(&mut self) -> Result<i64, KnotError> {
        let pos = self.pos();
        match self.next() {
            Tok::Int(n) => Ok(n),
            t => Err(KnotError::Syntax {
                pos,
                msg: format!("expected integer, found {}", describe(&t)),
            }),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Word(w) => format!("{w:?}"),
        Tok::Int(n) => n.to_string(),
        Tok::Sym(c) => format!("'{c}'"),
        Tok::End => "end of input".into(),
    }
}

/// Parses and validates a knot expression. Names must exist in `corpus`.
pub fn parse_knot(text: &str, corpus: &Corpus) -> Result<KnotExpr, KnotError> {
    let mut lx = Lexer {
        toks: lex(text)?,
        at: 0,
    };
    let e = expr(&mut lx, corpus)?;
    if *lx.peek() != Tok::End {
        return Err(KnotError::Syntax {
            pos: lx.pos(),
            msg: format!("trailing {}", describe(lx.peek())),
        });
    }
    Ok(e)
}

fn expr(lx: &mut Lexer, corpus: &Corpus) -> Result<KnotExpr, KnotError> {
    let mut parts = Vec::new();
    push_flat(&mut parts, term(lx, corpus)?);
    while matches!(lx.peek(), Tok::Sym('#') | Tok::Sym('+')) {
        lx.next();
        push_flat(&mut parts, term(lx, corpus)?);
    }
    Ok(KnotExpr::sum(parts))
}

fn push_flat(parts: &mut Vec<KnotExpr>, e: KnotExpr) {
    match e {
        KnotExpr::ConnSum(inner) => parts.extend(inner),
        e => parts.push(e),
    }
}

fn term(lx: &mut Lexer, corpus: &Corpus) -> Result<KnotExpr, KnotError> {
    let pos = lx.pos();
    match lx.peek().clone() {
        Tok::Int(k) if *lx.peek2() == Tok::Sym('*') => {
            lx.next();
            lx.next();
            if k < 1 {
                return Err(KnotError::Syntax {
                    pos,
                    msg: format!("repeat count {k} must be ≥ 1"),
                });
            }
            let sub = term(lx, corpus)?;
            let mut parts = Vec::new();
            for _ in 0..k {
                push_flat(&mut parts, sub.clone());
            }
            Ok(KnotExpr::sum(parts))
        }
        Tok::Word(w) if *lx.peek2() == Tok::Sym('(') && matches!(w.as_str(), "m" | "T" | "K") => {
            lx.next();
            lx.next();
            let e = match w.as_str() {
                "m" => expr(lx, corpus)?.mirror(),
                _ => {
                    let p = lx.int()?;
                    lx.expect(',')?;
                    let q = lx.int()?;
                    if w == "T" {
                        KnotExpr::torus(p, q)?
                    } else {
                        KnotExpr::two_bridge(p, q)?
                    }
                }
            };
            lx.expect(')')?;
            Ok(e)
        }
        Tok::Word(w) if w == "U" => {
            lx.next();
            Ok(KnotExpr::Unknot)
        }
        Tok::Word(w) => {
            lx.next();
            if corpus.get(&w).is_none() {
                return Err(KnotError::UnknownName(w));
            }
            Ok(KnotExpr::Named(w))
        }
        Tok::Int(n) => {
            lx.next();
            let w = n.to_string();
            Err(KnotError::UnknownName(w))
        }
        t => Err(KnotError::Syntax {
            pos,
            msg: format!("expected a knot, found {}", describe(&t)),
        }),
    }
}
