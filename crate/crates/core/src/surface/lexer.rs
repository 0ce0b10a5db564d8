use super::{Span, SurfaceError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Num(u64),
    Not,      // ~
    Or,       // \/
    And,      // /\
    Imp,      // ->
    Iff,      // <->
    Eq,       // =
    Neq,      // !=
    IdEq,     // .=
    IdNeq,    // .!=
    Equiv,    // ===
    NEquiv,   // !==
    Lambda,   // \
    Dot,      // .
    Prime,    // '
    LParen,
    RParen,
    LBrack,
    RBrack,
    Colon,
    Comma,
    Turnstile, // |-
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Num(n) => format!("numeral `{n}`"),
            other => format!("`{}`", other.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::Ident(_) | Tok::Num(_) => "",
            Tok::Not => "~",
            Tok::Or => "\\/",
            Tok::And => "/\\",
            Tok::Imp => "->",
            Tok::Iff => "<->",
            Tok::Eq => "=",
            Tok::Neq => "!=",
            Tok::IdEq => ".=",
            Tok::IdNeq => ".!=",
            Tok::Equiv => "===",
            Tok::NEquiv => "!==",
            Tok::Lambda => "\\",
            Tok::Dot => ".",
            Tok::Prime => "'",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBrack => "[",
            Tok::RBrack => "]",
            Tok::Colon => ":",
            Tok::Comma => ",",
            Tok::Turnstile => "|-",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

// Longest match first.
const SYMBOLS: &[(&str, Tok)] = &[
    ("<->", Tok::Iff),
    (".!=", Tok::IdNeq),
    ("===", Tok::Equiv),
    ("!==", Tok::NEquiv),
    ("\\/", Tok::Or),
    ("/\\", Tok::And),
    ("->", Tok::Imp),
    ("!=", Tok::Neq),
    (".=", Tok::IdEq),
    ("|-", Tok::Turnstile),
    ("~", Tok::Not),
    ("=", Tok::Eq),
    ("\\", Tok::Lambda),
    (".", Tok::Dot),
    ("'", Tok::Prime),
    ("(", Tok::LParen),
    (")", Tok::RParen),
    ("[", Tok::LBrack),
    ("]", Tok::RBrack),
    (":", Tok::Colon),
    (",", Tok::Comma),
];

fn is_ident_start(c: u8) -> bool {
    c.is_ascii_alphabetic() || c == b'_'
}

fn is_ident_char(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_'
}

/// Identifiers are `[A-Za-z_][A-Za-z0-9_]*`, optionally followed by `$n`
/// (a name from the fresh-name supply).
pub fn tokenize(src: &str) -> Result<Vec<Token>, SurfaceError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    'outer: while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if is_ident_start(c) {
            let start = i;
            while i < bytes.len() && is_ident_char(bytes[i]) {
                i += 1;
            }
            if i + 1 < bytes.len() && bytes[i] == b'$' && bytes[i + 1].is_ascii_digit() {
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
            }
            out.push(Token { tok: Tok::Ident(src[start..i].to_owned()), span: Span::new(start, i) });
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let span = Span::new(start, i);
            let n = src[start..i]
                .parse::<u64>()
                .map_err(|_| SurfaceError::Syntax { span, msg: "numeral out of range".into() })?;
            out.push(Token { tok: Tok::Num(n), span });
            continue;
        }
        for (sym, tok) in SYMBOLS {
            if src[i..].starts_with(sym) {
                out.push(Token { tok: tok.clone(), span: Span::new(i, i + sym.len()) });
                i += sym.len();
                continue 'outer;
            }
        }
        let ch = src[i..].chars().next().unwrap_or('?');
        return Err(SurfaceError::Syntax {
            span: Span::new(i, i + ch.len_utf8()),
            msg: format!("unexpected character `{ch}`"),
        });
    }
    Ok(out)
}
