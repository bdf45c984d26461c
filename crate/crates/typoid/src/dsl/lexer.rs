use super::diagnostic::{Code, Diagnostic, Span};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    LBrace,
    RBrace,
    Semi,
    Colon,
    Arrow,
    MapsTo,
    Tilde,
    Dot,
    Star,
    Eq,
    EqEq,
    FatArrow,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::MapsTo => "`|->`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Star => "`*`".into(),
            Tok::Eq => "`=`".into(),
            Tok::EqEq => "`==`".into(),
            Tok::FatArrow => "`=>`".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

/// Splits `src` into tokens. Unknown characters become diagnostics and are
/// skipped so that lexing never stops early.
pub fn lex(src: &str) -> (Vec<Token>, Vec<Diagnostic>) {
    let mut tokens = Vec::new();
    let mut diags = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1u32, 1u32);
    while i < chars.len() {
        let c = chars[i];
        let start = Span::new(line, col, 1);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
                col += 1;
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let begin = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[begin..i].iter().collect();
            let len = (i - begin) as u32;
            tokens.push(Token {
                tok: Tok::Ident(word),
                span: Span::new(line, col, len),
            });
            col += len;
            continue;
        }
        let next = chars.get(i + 1).copied();
        let (tok, len) = match (c, next) {
            ('{', _) => (Some(Tok::LBrace), 1),
            ('}', _) => (Some(Tok::RBrace), 1),
            (';', _) => (Some(Tok::Semi), 1),
            (':', _) => (Some(Tok::Colon), 1),
            ('~', _) => (Some(Tok::Tilde), 1),
            ('.', _) => (Some(Tok::Dot), 1),
            ('*', _) => (Some(Tok::Star), 1),
            ('-', Some('>')) => (Some(Tok::Arrow), 2),
            ('|', Some('-')) if chars.get(i + 2) == Some(&'>') => (Some(Tok::MapsTo), 3),
            ('=', Some('=')) => (Some(Tok::EqEq), 2),
            ('=', Some('>')) => (Some(Tok::FatArrow), 2),
            ('=', _) => (Some(Tok::Eq), 1),
            _ => (None, 1),
        };
        match tok {
            Some(tok) => tokens.push(Token {
                tok,
                span: Span::new(line, col, len),
            }),
            None => diags.push(Diagnostic::new(
                Code::UnexpectedChar,
                start,
                format!("unexpected character {c:?}"),
            )),
        }
        i += len as usize;
        col += len;
    }
    (tokens, diags)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<Tok> {
        lex(src).0.into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn punctuation() {
        assert_eq!(
            kinds("-> |-> == => = . * ~ : ;"),
            vec![
                Tok::Arrow,
                Tok::MapsTo,
                Tok::EqEq,
                Tok::FatArrow,
                Tok::Eq,
                Tok::Dot,
                Tok::Star,
                Tok::Tilde,
                Tok::Colon,
                Tok::Semi
            ]
        );
    }

    #[test]
    fn comments_and_positions() {
        let (toks, diags) = lex("# hi\n  ab_1 # x\n;");
        assert!(diags.is_empty());
        assert_eq!(toks[0].tok, Tok::Ident("ab_1".into()));
        assert_eq!(toks[0].span, Span::new(2, 3, 4));
        assert_eq!(toks[1].span, Span::new(3, 1, 1));
    }

    #[test]
    fn bad_characters_are_reported_and_skipped() {
        let (toks, diags) = lex("a $ b λ");
        assert_eq!(toks.len(), 2);
        assert_eq!(diags.len(), 2);
        assert_eq!(diags[0].span, Span::new(1, 3, 1));
        assert_eq!(diags[1].span, Span::new(1, 7, 1));
    }
}
