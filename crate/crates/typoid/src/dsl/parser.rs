//! Recursive descent over the token stream. Produces untyped blocks of
//! statements; name resolution happens in `resolve`.

use super::diagnostic::{Code, Diagnostic, Span};
use super::lexer::{Tok, Token};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Name {
    pub text: String,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stmt {
    Terms(Vec<Name>),
    StrictUnits(Span),
    Path(Name, Name, Name),
    Comp(Name, Name, Name),
    Pinv(Name, Name),
    Edge(Name, Name, Name),
    Eqv(Name, Name),
    Star(Name, Name, Name),
    Einv(Name, Name),
    Cell(Name, Name),
    Idtoeqv(Name, Name),
    MapTerm(Name, Name),
    MapPath(Name, Name),
    MapEdge(Name, Name),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockKind {
    Typoid,
    Morphism { source: Name, target: Name },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub kind: BlockKind,
    pub name: Name,
    pub stmts: Vec<Stmt>,
}

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    end: Span,
    diags: Vec<Diagnostic>,
}

/// Marker for a failed production; the diagnostic is already recorded.
struct Failed;

type PResult<T> = Result<T, Failed>;

pub fn parse_blocks(toks: &[Token], end: Span) -> (Vec<Block>, Vec<Diagnostic>) {
    let mut p = Parser {
        toks,
        pos: 0,
        end,
        diags: Vec::new(),
    };
    let mut blocks = Vec::new();
    while p.pos < toks.len() {
        match p.block() {
            Ok(b) => blocks.push(b),
            Err(Failed) => p.skip_to_block(),
        }
    }
    (blocks, p.diags)
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn error(&mut self, expected: &str) -> Failed {
        let (span, found) = match self.peek() {
            Some(t) => (t.span, t.tok.describe()),
            None => (self.end, "end of input".into()),
        };
        self.diags.push(Diagnostic::new(
            Code::Syntax,
            span,
            format!("expected {expected}, found {found}"),
        ));
        Failed
    }

    fn expect(&mut self, tok: Tok) -> PResult<Span> {
        match self.peek() {
            Some(t) if t.tok == tok => {
                self.pos += 1;
                Ok(self.toks[self.pos - 1].span)
            }
            _ => Err(self.error(&tok.describe())),
        }
    }

    fn name(&mut self) -> PResult<Name> {
        match self.peek() {
            Some(Token {
                tok: Tok::Ident(s),
                span,
            }) => {
                let name = Name {
                    text: s.clone(),
                    span: *span,
                };
                self.pos += 1;
                Ok(name)
            }
            _ => Err(self.error("a name")),
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Token { tok: Tok::Ident(s), .. }) if s == kw)
    }

    /// Skips to just past the next `;`, or to the next `}` without
    /// consuming it.
    fn skip_stmt(&mut self) {
        while let Some(t) = self.peek() {
            match t.tok {
                Tok::Semi => {
                    self.pos += 1;
                    return;
                }
                Tok::RBrace => return,
                _ => self.pos += 1,
            }
        }
    }

    fn skip_to_block(&mut self) {
        // always make progress
        self.pos += 1;
        while self.pos < self.toks.len() && !self.at_keyword("typoid") && !self.at_keyword("morphism") {
            self.pos += 1;
        }
    }

    fn block(&mut self) -> PResult<Block> {
        let kind = if self.at_keyword("typoid") {
            self.pos += 1;
            None
        } else if self.at_keyword("morphism") {
            self.pos += 1;
            Some(())
        } else {
            return Err(self.error("`typoid` or `morphism`"));
        };
        let name = self.name()?;
        let kind = match kind {
            None => BlockKind::Typoid,
            Some(()) => {
                self.expect(Tok::Colon)?;
                let source = self.name()?;
                self.expect(Tok::Arrow)?;
                let target = self.name()?;
                BlockKind::Morphism { source, target }
            }
        };
        self.expect(Tok::LBrace)?;
        let typoid = kind == BlockKind::Typoid;
        let mut stmts = Vec::new();
        loop {
            match self.peek().map(|t| &t.tok) {
                None => {
                    self.error("`}`");
                    break;
                }
                Some(Tok::RBrace) => {
                    self.pos += 1;
                    break;
                }
                // a new block keyword where a statement should be means the
                // closing brace was forgotten
                Some(Tok::Ident(kw)) if (kw == "typoid" || kw == "morphism") && self.block_starts_here() => {
                    self.error("`}`");
                    break;
                }
                _ => match self.stmt(typoid) {
                    Ok(s) => stmts.push(s),
                    Err(Failed) => self.skip_stmt(),
                },
            }
        }
        Ok(Block { kind, name, stmts })
    }

    fn block_starts_here(&self) -> bool {
        matches!(
            (self.toks.get(self.pos + 1), self.toks.get(self.pos + 2)),
            (
                Some(Token { tok: Tok::Ident(_), .. }),
                Some(Token {
                    tok: Tok::LBrace | Tok::Colon,
                    ..
                })
            )
        )
    }

    fn stmt(&mut self, typoid: bool) -> PResult<Stmt> {
        let kw = self.name()?;
        let stmt = match (typoid, kw.text.as_str()) {
            (true, "terms") => {
                let mut names = Vec::new();
                while matches!(self.peek(), Some(Token { tok: Tok::Ident(_), .. })) {
                    names.push(self.name()?);
                }
                Stmt::Terms(names)
            }
            (true, "strictunits") => Stmt::StrictUnits(kw.span),
            (true, "path") => {
                let (n, a, b) = self.arrow_decl(Tok::Arrow)?;
                Stmt::Path(n, a, b)
            }
            (true, "edge") => {
                let (n, a, b) = self.arrow_decl(Tok::Tilde)?;
                Stmt::Edge(n, a, b)
            }
            (true, "comp") => {
                let (p, q, r) = self.binary(Tok::Dot)?;
                Stmt::Comp(p, q, r)
            }
            (true, "star") => {
                let (e, d, c) = self.binary(Tok::Star)?;
                Stmt::Star(e, d, c)
            }
            (true, "pinv") => {
                let (p, q) = self.pair(Tok::Eq)?;
                Stmt::Pinv(p, q)
            }
            (true, "einv") => {
                let (e, d) = self.pair(Tok::Eq)?;
                Stmt::Einv(e, d)
            }
            (true, "eqv") => {
                let (x, e) = self.pair(Tok::Eq)?;
                Stmt::Eqv(x, e)
            }
            (true, "cell") => {
                let (e, d) = self.pair(Tok::EqEq)?;
                Stmt::Cell(e, d)
            }
            (true, "idtoeqv") => {
                let (p, e) = self.pair(Tok::FatArrow)?;
                Stmt::Idtoeqv(p, e)
            }
            (false, "term") => {
                let (a, b) = self.pair(Tok::MapsTo)?;
                Stmt::MapTerm(a, b)
            }
            (false, "path") => {
                let (a, b) = self.pair(Tok::MapsTo)?;
                Stmt::MapPath(a, b)
            }
            (false, "edge") => {
                let (a, b) = self.pair(Tok::MapsTo)?;
                Stmt::MapEdge(a, b)
            }
            _ => {
                let what = if typoid { "typoid" } else { "morphism" };
                self.diags.push(Diagnostic::new(
                    Code::Syntax,
                    kw.span,
                    format!("unknown {what} statement `{}`", kw.text),
                ));
                return Err(Failed);
            }
        };
        self.expect(Tok::Semi)?;
        Ok(stmt)
    }

    fn arrow_decl(&mut self, sep: Tok) -> PResult<(Name, Name, Name)> {
        let n = self.name()?;
        self.expect(Tok::Colon)?;
        let a = self.name()?;
        self.expect(sep)?;
        let b = self.name()?;
        Ok((n, a, b))
    }

    fn binary(&mut self, op: Tok) -> PResult<(Name, Name, Name)> {
        let a = self.name()?;
        self.expect(op)?;
        let b = self.name()?;
        self.expect(Tok::Eq)?;
        let c = self.name()?;
        Ok((a, b, c))
    }

    fn pair(&mut self, sep: Tok) -> PResult<(Name, Name)> {
        let a = self.name()?;
        self.expect(sep)?;
        let b = self.name()?;
        Ok((a, b))
    }
}
