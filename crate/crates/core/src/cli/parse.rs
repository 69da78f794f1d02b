//! Surface syntax for words.
//!
//! ```text
//! expr   := factor*                 juxtaposition is the product
//! factor := atom power*             power = ^-?[0-9]+
//! atom   := gen | "(" expr ")" | "[" expr "," expr "]"
//! gen    := [A-Za-z]+[0-9]*  |  A\[[0-9]+,[0-9]+\]
//! ```
//!
//! The empty expression denotes the identity. `[u, v]` is `u v u⁻¹ v⁻¹`.

use std::fmt;
use std::ops::Range;

use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

use crate::braid::DEFAULT_LENGTH_CAP;
use crate::word::{pure_index, Alphabet, ReducedWord};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected character {found:?} at byte {offset}")]
    Lex { offset: usize, found: char },
    #[error("expected {expected} at byte {offset}, found {found}")]
    Unexpected {
        offset: usize,
        found: String,
        expected: &'static str,
    },
    #[error("unknown generator {name:?} at byte {offset} for alphabet {alphabet}")]
    UnknownGenerator {
        offset: usize,
        name: String,
        alphabet: Alphabet,
    },
    #[error("generator {name:?} at byte {offset} is out of range for alphabet {alphabet}")]
    OutOfRange {
        offset: usize,
        name: String,
        alphabet: Alphabet,
    },
    #[error("power at byte {offset} would exceed {cap} letters")]
    TooLong { offset: usize, cap: usize },
    #[error("bad alphabet {0:?}: expected free:K, sigma:N or pure:N")]
    Alphabet(String),
}

impl ParseError {
    pub fn offset(&self) -> Option<usize> {
        match self {
            ParseError::Lex { offset, .. }
            | ParseError::Unexpected { offset, .. }
            | ParseError::UnknownGenerator { offset, .. }
            | ParseError::OutOfRange { offset, .. }
            | ParseError::TooLong { offset, .. } => Some(*offset),
            ParseError::Alphabet(_) => None,
        }
    }

    /// The message followed by the input and a caret under the offending byte.
    pub fn diagnostic(&self, input: &str) -> String {
        match self.offset() {
            Some(offset) => {
                let pad = input[..offset.min(input.len())].chars().count();
                format!("error: {self}\n  {input}\n  {}^", " ".repeat(pad))
            }
            None => format!("error: {self}"),
        }
    }
}

#[derive(Debug, Clone)]
pub enum WordExpr {
    /// A generator token, verbatim. The span is ignored by equality.
    Gen { name: String, span: Range<usize> },
    /// Juxtaposition; never has exactly one factor when built by the parser.
    Product(Vec<WordExpr>),
    Power(Box<WordExpr>, BigInt),
    Commutator(Box<WordExpr>, Box<WordExpr>),
    Group(Box<WordExpr>),
}

impl PartialEq for WordExpr {
    fn eq(&self, other: &Self) -> bool {
        use WordExpr::*;
        match (self, other) {
            (Gen { name: a, .. }, Gen { name: b, .. }) => a == b,
            (Product(a), Product(b)) => a == b,
            (Power(a, e), Power(b, f)) => a == b && e == f,
            (Commutator(a, b), Commutator(c, d)) => a == c && b == d,
            (Group(a), Group(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for WordExpr {}

impl fmt::Display for WordExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordExpr::Gen { name, .. } => f.write_str(name),
            WordExpr::Product(factors) => {
                for (k, x) in factors.iter().enumerate() {
                    if k > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
            WordExpr::Power(base, e) => match **base {
                WordExpr::Product(_) => write!(f, "({base})^{e}"),
                _ => write!(f, "{base}^{e}"),
            },
            WordExpr::Commutator(a, b) => write!(f, "[{a}, {b}]"),
            WordExpr::Group(inner) => write!(f, "({inner})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Gen(String),
    Power(BigInt),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Gen(name) => format!("generator {name:?}"),
            Token::Power(e) => format!("power ^{e}"),
            Token::LParen => "'('".into(),
            Token::RParen => "')'".into(),
            Token::LBracket => "'['".into(),
            Token::RBracket => "']'".into(),
            Token::Comma => "','".into(),
        }
    }
}

/// Length of an `A[i,j]` token starting at `start`, if there is one.
fn pure_token_len(bytes: &[u8], start: usize) -> Option<usize> {
    let rest = &bytes[start..];
    if rest.len() < 2 || rest[0] != b'A' || rest[1] != b'[' {
        return None;
    }
    let mut k = 2;
    let digits = |k: &mut usize| {
        let from = *k;
        while *k < rest.len() && rest[*k].is_ascii_digit() {
            *k += 1;
        }
        *k > from
    };
    if !digits(&mut k) || rest.get(k) != Some(&b',') {
        return None;
    }
    k += 1;
    if !digits(&mut k) || rest.get(k) != Some(&b']') {
        return None;
    }
    Some(k + 1)
}

fn lex(input: &str) -> Result<Vec<(Token, Range<usize>)>, ParseError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut k = 0;
    while k < bytes.len() {
        let start = k;
        let c = bytes[k];
        let token = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                k += 1;
                continue;
            }
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'[' => Token::LBracket,
            b']' => Token::RBracket,
            b',' => Token::Comma,
            b'^' => {
                let mut end = k + 1;
                if bytes.get(end) == Some(&b'-') {
                    end += 1;
                }
                let digits_from = end;
                while end < bytes.len() && bytes[end].is_ascii_digit() {
                    end += 1;
                }
                if end == digits_from {
                    return Err(ParseError::Unexpected {
                        offset: end,
                        found: input[end..]
                            .chars()
                            .next()
                            .map_or("end of input".into(), |c| format!("{c:?}")),
                        expected: "an integer exponent",
                    });
                }
                k = end;
                let e: BigInt = input[start + 1..end].parse().expect("digits");
                out.push((Token::Power(e), start..end));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                if let Some(len) = pure_token_len(bytes, k) {
                    k += len;
                } else {
                    while k < bytes.len() && bytes[k].is_ascii_alphabetic() {
                        k += 1;
                    }
                    while k < bytes.len() && bytes[k].is_ascii_digit() {
                        k += 1;
                    }
                }
                out.push((Token::Gen(input[start..k].to_string()), start..k));
                continue;
            }
            _ => {
                let found = input[k..].chars().next().expect("in bounds");
                return Err(ParseError::Lex { offset: k, found });
            }
        };
        k += 1;
        out.push((token, start..k));
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(Token, Range<usize>)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(_, r)| r.start)
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        ParseError::Unexpected {
            offset: self.offset(),
            found: self.peek().map_or("end of input".into(), Token::describe),
            expected,
        }
    }

    fn expect(&mut self, token: Token, expected: &'static str) -> Result<(), ParseError> {
        if self.peek() == Some(&token) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn expr(&mut self) -> Result<WordExpr, ParseError> {
        let mut factors = Vec::new();
        while matches!(self.peek(), Some(Token::Gen(_) | Token::LParen | Token::LBracket)) {
            factors.push(self.factor()?);
        }
        if factors.len() == 1 {
            return Ok(factors.pop().expect("one factor"));
        }
        Ok(WordExpr::Product(factors))
    }

    fn factor(&mut self) -> Result<WordExpr, ParseError> {
        let mut base = self.atom()?;
        while let Some(Token::Power(e)) = self.peek() {
            base = WordExpr::Power(Box::new(base), e.clone());
            self.pos += 1;
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<WordExpr, ParseError> {
        let (token, span) = self.tokens[self.pos].clone();
        self.pos += 1;
        match token {
            Token::Gen(name) => Ok(WordExpr::Gen { name, span }),
            Token::LParen => {
                let inner = self.expr()?;
                self.expect(Token::RParen, "')'")?;
                Ok(WordExpr::Group(Box::new(inner)))
            }
            Token::LBracket => {
                let a = self.expr()?;
                self.expect(Token::Comma, "','")?;
                let b = self.expr()?;
                self.expect(Token::RBracket, "']'")?;
                Ok(WordExpr::Commutator(Box::new(a), Box::new(b)))
            }
            _ => unreachable!("atom called on a non-atom token"),
        }
    }
}

pub fn parse_expr(input: &str) -> Result<WordExpr, ParseError> {
    let mut p = Parser {
        tokens: lex(input)?,
        pos: 0,
        end: input.len(),
    };
    let expr = p.expr()?;
    if p.pos < p.tokens.len() {
        return Err(p.unexpected("a generator, '(' or '['"));
    }
    Ok(expr)
}

pub fn parse_alphabet(text: &str) -> Result<Alphabet, ParseError> {
    let bad = || ParseError::Alphabet(text.to_string());
    let (kind, size) = text.split_once(':').ok_or_else(bad)?;
    let size: usize = size.parse().map_err(|_| bad())?;
    match kind {
        "free" => Ok(Alphabet::Free(size)),
        "sigma" => Ok(Alphabet::Sigma(size)),
        "pure" => Ok(Alphabet::Pure(size)),
        _ => Err(bad()),
    }
}

/// Index of the generator named `name` in `alphabet`.
fn resolve(name: &str, offset: usize, alphabet: Alphabet) -> Result<usize, ParseError> {
    let unknown = || ParseError::UnknownGenerator {
        offset,
        name: name.to_string(),
        alphabet,
    };
    let out_of_range = || ParseError::OutOfRange {
        offset,
        name: name.to_string(),
        alphabet,
    };
    let numbered = |prefix: &str| -> Option<usize> {
        let digits = name.strip_prefix(prefix)?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        // absurdly long indices are out of range rather than unknown
        Some(digits.parse().unwrap_or(usize::MAX))
    };
    match alphabet {
        Alphabet::Free(k) => {
            let m = match name {
                "x" => 1,
                "y" => 2,
                _ => numbered("x").ok_or_else(unknown)?,
            };
            if m == 0 || m > k {
                return Err(out_of_range());
            }
            Ok(m - 1)
        }
        Alphabet::Sigma(n) => {
            let m = numbered("s").ok_or_else(unknown)?;
            if m == 0 || m >= n {
                return Err(out_of_range());
            }
            Ok(m - 1)
        }
        Alphabet::Pure(n) => {
            let inner = name
                .strip_prefix("A[")
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(unknown)?;
            let (i, j) = inner.split_once(',').ok_or_else(unknown)?;
            let i: usize = i.parse().unwrap_or(usize::MAX);
            let j: usize = j.parse().unwrap_or(usize::MAX);
            if i == 0 || i >= j || j > n {
                return Err(out_of_range());
            }
            Ok(pure_index(i, j, n))
        }
    }
}

fn first_offset(expr: &WordExpr) -> usize {
    match expr {
        WordExpr::Gen { span, .. } => span.start,
        WordExpr::Product(f) => f.first().map_or(0, first_offset),
        WordExpr::Power(b, _) | WordExpr::Group(b) | WordExpr::Commutator(b, _) => first_offset(b),
    }
}

pub fn evaluate(expr: &WordExpr, alphabet: Alphabet) -> Result<ReducedWord, ParseError> {
    Ok(match expr {
        WordExpr::Gen { name, span } => {
            let g = resolve(name, span.start, alphabet)?;
            ReducedWord::generator(alphabet, g).expect("resolved index is in range")
        }
        WordExpr::Product(factors) => {
            let mut out = ReducedWord::identity(alphabet);
            for x in factors {
                out = out.multiply(&evaluate(x, alphabet)?).expect("same alphabet");
            }
            out
        }
        WordExpr::Power(base, e) => {
            let w = evaluate(base, alphabet)?;
            if w.syllables().len() > 1 && BigInt::from(w.len()) * e.abs() > BigInt::from(DEFAULT_LENGTH_CAP) {
                return Err(ParseError::TooLong {
                    offset: first_offset(base),
                    cap: DEFAULT_LENGTH_CAP,
                });
            }
            w.pow(e)
        }
        WordExpr::Commutator(a, b) => evaluate(a, alphabet)?
            .commutator(&evaluate(b, alphabet)?)
            .expect("same alphabet"),
        WordExpr::Group(inner) => evaluate(inner, alphabet)?,
    })
}

pub fn parse_word(text: &str, alphabet: Alphabet) -> Result<ReducedWord, ParseError> {
    evaluate(&parse_expr(text)?, alphabet)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{Letter, ReducedWord};
    use proptest::prelude::*;

    fn gen(name: &str) -> WordExpr {
        WordExpr::Gen {
            name: name.into(),
            span: 0..0,
        }
    }

    #[test]
    fn ast_shapes() {
        assert_eq!(parse_expr("").unwrap(), WordExpr::Product(vec![]));
        assert_eq!(parse_expr("x1").unwrap(), gen("x1"));
        assert_eq!(
            parse_expr("x y^-2").unwrap(),
            WordExpr::Product(vec![gen("x"), WordExpr::Power(Box::new(gen("y")), BigInt::from(-2))])
        );
        assert_eq!(
            parse_expr("[A[1,2], (s1 s2)]").unwrap(),
            WordExpr::Commutator(
                Box::new(gen("A[1,2]")),
                Box::new(WordExpr::Group(Box::new(WordExpr::Product(vec![gen("s1"), gen("s2")]))))
            )
        );
        // spans are recorded but do not affect equality
        match parse_expr("  x7").unwrap() {
            WordExpr::Gen { span, .. } => assert_eq!(span, 2..4),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn juxtaposition_needs_no_space_between_tokens() {
        assert_eq!(parse_expr("x1x2").unwrap(), WordExpr::Product(vec![gen("x1"), gen("x2")]));
        assert_eq!(parse_expr("A[1,2]A[2,3]").unwrap(), WordExpr::Product(vec![gen("A[1,2]"), gen("A[2,3]")]));
        // `A` not followed by a full index is an ordinary name
        assert_eq!(
            parse_expr("A[x, y]").unwrap(),
            WordExpr::Product(vec![
                gen("A"),
                WordExpr::Commutator(Box::new(gen("x")), Box::new(gen("y")))
            ])
        );
    }

    #[test]
    fn witness_parses() {
        let w = parse_word("[[A[1,2],A[2,3]],[A[2,3],A[3,4]]]", Alphabet::Pure(4)).unwrap();
        let a = |i, j| ReducedWord::generator(Alphabet::Pure(4), pure_index(i, j, 4)).unwrap();
        let expected = a(1, 2)
            .commutator(&a(2, 3))
            .unwrap()
            .commutator(&a(2, 3).commutator(&a(3, 4)).unwrap())
            .unwrap();
        assert_eq!(w, expected);
    }

    #[test]
    fn evaluation_examples() {
        assert!(parse_word("x x^-1", Alphabet::Free(2)).unwrap().is_identity());
        let s = parse_word("s1^2", Alphabet::Sigma(2)).unwrap();
        assert_eq!(s, ReducedWord::reduce(Alphabet::Sigma(2), &[Letter::new(0), Letter::new(0)]).unwrap());
        let c = parse_word("[x, y]", Alphabet::Free(2)).unwrap();
        assert_eq!(c.to_string(), "x y x^-1 y^-1");
        assert_eq!(parse_word("(x y)^0", Alphabet::Free(2)).unwrap().len(), 0);
        assert_eq!(parse_word("x^1000000000000", Alphabet::Free(1)).unwrap().syllables().len(), 1);
    }

    #[test]
    fn errors_carry_offsets() {
        let e = parse_expr("x $").unwrap_err();
        assert_eq!(e, ParseError::Lex { offset: 2, found: '$' });
        assert_eq!(e.diagnostic("x $"), "error: unexpected character '$' at byte 2\n  x $\n    ^");
        assert_eq!(parse_expr("x^").unwrap_err().offset(), Some(2));
        assert_eq!(parse_expr("(x").unwrap_err().offset(), Some(2));
        assert_eq!(parse_expr("[x y]").unwrap_err().offset(), Some(4));
        assert_eq!(parse_expr("x)").unwrap_err().offset(), Some(1));
        assert!(matches!(
            parse_word("x z", Alphabet::Free(2)),
            Err(ParseError::UnknownGenerator { offset: 2, .. })
        ));
        assert!(matches!(
            parse_word("x x3", Alphabet::Free(2)),
            Err(ParseError::OutOfRange { offset: 2, .. })
        ));
        assert!(matches!(
            parse_word("s2", Alphabet::Sigma(2)),
            Err(ParseError::OutOfRange { offset: 0, .. })
        ));
        assert!(matches!(
            parse_word("A[2,2]", Alphabet::Pure(3)),
            Err(ParseError::OutOfRange { .. })
        ));
        assert!(matches!(
            parse_word("(x y)^2000000", Alphabet::Free(2)),
            Err(ParseError::TooLong { offset: 1, .. })
        ));
    }

    #[test]
    fn alphabets() {
        assert_eq!(parse_alphabet("free:3").unwrap(), Alphabet::Free(3));
        assert_eq!(parse_alphabet("sigma:4").unwrap(), Alphabet::Sigma(4));
        assert_eq!(parse_alphabet("pure:5").unwrap(), Alphabet::Pure(5));
        assert!(parse_alphabet("pure").is_err());
        assert!(parse_alphabet("braid:3").is_err());
    }

    #[test]
    fn printed_words_parse_back() {
        for alphabet in [Alphabet::Free(2), Alphabet::Free(3), Alphabet::Sigma(4), Alphabet::Pure(4)] {
            let w = parse_word(&alphabet.letters().join(" "), alphabet).unwrap();
            let w = w.commutator(&w.pow(&BigInt::from(3))).unwrap().multiply(&w.invert()).unwrap();
            assert_eq!(parse_word(&w.to_string(), alphabet).unwrap(), w);
        }
    }

    fn arb_expr() -> impl Strategy<Value = WordExpr> {
        let leaf = prop::sample::select(vec!["x", "y", "x12", "s3", "abc", "A[1,2]", "A[10,3]"]).prop_map(gen);
        leaf.prop_recursive(4, 24, 4, |inner| {
            let atom = prop_oneof![
                inner.clone().prop_filter("atom", |e| !matches!(e, WordExpr::Product(_))),
                inner.clone().prop_map(|e| WordExpr::Group(Box::new(e))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| WordExpr::Commutator(Box::new(a), Box::new(b))),
            ];
            prop_oneof![
                (atom.clone(), -20i64..20).prop_map(|(a, e)| WordExpr::Power(Box::new(a), BigInt::from(e))),
                prop::collection::vec(atom.clone(), 0..4)
                    .prop_filter("products never have one factor", |v| v.len() != 1)
                    .prop_map(WordExpr::Product),
                atom,
            ]
        })
    }

    proptest! {
        #[test]
        fn print_then_parse_round_trips(e in arb_expr()) {
            let text = e.to_string();
            prop_assert_eq!(parse_expr(&text).unwrap(), e, "{}", text);
        }

        #[test]
        fn lexer_never_panics(s in "[ xyA0-9,()\\[\\]^-]{0,24}") {
            if let Ok(e) = parse_expr(&s) {
                prop_assert_eq!(parse_expr(&e.to_string()).unwrap(), e);
            }
        }
    }
}
