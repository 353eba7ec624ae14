use super::{is_identifier, Letter, Presentation, PresentationError, Result, Word};

/// Parses `<gens | relators>`.
///
/// Lines whose first non-blank character is `#` are ignored. Exponents may be
/// written `x^-2`, `x-2` or, when unambiguous with respect to the generator
/// names, `x2`; the token `1` is the empty relator.
pub fn parse(text: &str) -> Result<Presentation> {
    let mut cleaned = String::with_capacity(text.len());
    for line in text.split_inclusive('\n') {
        if line.trim_start().starts_with('#') {
            cleaned.extend(std::iter::repeat_n(' ', line.len()));
        } else {
            cleaned.push_str(line);
        }
    }
    let mut p = Parser {
        src: cleaned.as_bytes(),
        pos: 0,
        gens: Vec::new(),
    };
    p.presentation()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    gens: Vec<String>,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(PresentationError::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{}`", c as char))
        }
    }

    fn identifier(&mut self) -> Option<(usize, String)> {
        self.skip_ws();
        let start = self.pos;
        if !self.src.get(start).is_some_and(u8::is_ascii_alphabetic) {
            return None;
        }
        let mut end = start + 1;
        while end < self.src.len()
            && (self.src[end].is_ascii_alphanumeric() || self.src[end] == b'_')
        {
            end += 1;
        }
        self.pos = end;
        Some((
            start,
            String::from_utf8_lossy(&self.src[start..end]).into_owned(),
        ))
    }

    fn digits(&mut self) -> Option<u64> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return None;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()?
            .parse()
            .ok()
    }

    fn presentation(&mut self) -> Result<Presentation> {
        self.expect(b'<')?;
        if self.peek() != Some(b'|') {
            loop {
                let Some((pos, name)) = self.identifier() else {
                    return self.err("expected generator name");
                };
                if self.gens.contains(&name) {
                    self.pos = pos;
                    return Err(PresentationError::DuplicateGenerator(name));
                }
                debug_assert!(is_identifier(&name));
                self.gens.push(name);
                if self.peek() == Some(b',') {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        self.expect(b'|')?;
        let mut relators = Vec::new();
        if self.peek() != Some(b'>') {
            loop {
                relators.push(self.relator()?);
                if self.peek() == Some(b',') {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        self.expect(b'>')?;
        if self.peek().is_some() {
            return self.err("trailing input after `>`");
        }
        Presentation::new(std::mem::take(&mut self.gens), relators)
    }

    fn relator(&mut self) -> Result<Word> {
        if self.peek() == Some(b'1') {
            self.pos += 1;
            if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                return self.err("unexpected number");
            }
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        let mut factors = 0;
        while let Some(c) = self.peek() {
            if c == b',' || c == b'>' {
                break;
            }
            let (g, e) = self.factor()?;
            factors += 1;
            let sign = if e < 0 { -1 } else { 1 };
            letters.extend(std::iter::repeat_n(
                Letter::new(g, sign),
                e.unsigned_abs() as usize,
            ));
        }
        if factors == 0 {
            return self.err("expected relator");
        }
        Ok(Word::new(letters))
    }

    fn factor(&mut self) -> Result<(usize, i64)> {
        let Some((start, name)) = self.identifier() else {
            return self.err("expected generator");
        };
        let (g, implicit) = match self.gens.iter().position(|g| *g == name) {
            Some(g) => (g, None),
            None => {
                let stem = name.trim_end_matches(|c: char| c.is_ascii_digit());
                match self.gens.iter().position(|g| g == stem) {
                    Some(g) if stem.len() < name.len() => {
                        let e: i64 =
                            name[stem.len()..]
                                .parse()
                                .map_err(|_| PresentationError::Parse {
                                    pos: start,
                                    msg: "exponent overflow".into(),
                                })?;
                        (g, Some(e))
                    }
                    _ => return Err(PresentationError::UnknownGenerator { name, pos: start }),
                }
            }
        };
        if let Some(e) = implicit {
            return Ok((g, e));
        }
        let save = self.pos;
        let caret = self.peek() == Some(b'^');
        if caret {
            self.pos += 1;
        } else {
            self.pos = save;
        }
        let after_caret = self.pos;
        let neg = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') if caret => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        if !caret && !neg {
            self.pos = save;
            return Ok((g, 1));
        }
        self.skip_ws();
        match self.digits() {
            Some(d) => {
                let d = i64::try_from(d).map_err(|_| PresentationError::Parse {
                    pos: after_caret,
                    msg: "exponent overflow".into(),
                })?;
                Ok((g, if neg { -d } else { d }))
            }
            None if caret => self.err("expected exponent after `^`"),
            None => self.err("expected exponent after `-`"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(p: &Presentation, i: usize) -> Vec<(usize, i8)> {
        p.relators()[i]
            .letters()
            .iter()
            .map(|l| (l.generator, l.sign))
            .collect()
    }

    #[test]
    fn basic_forms() {
        let p = parse("<x | x^3>").unwrap();
        assert_eq!(word(&p, 0), vec![(0, 1); 3]);
        let c = parse("<x,y | x y x^-1 y^-1>").unwrap();
        assert_eq!(word(&c, 0), vec![(0, 1), (1, 1), (0, -1), (1, -1)]);
        let t = parse("<x,y | 1>").unwrap();
        assert!(t.relators()[0].is_empty());
        let s1 = parse("<x|>").unwrap();
        assert_eq!(s1.num_relators(), 0);
        let s2 = parse("<|1>").unwrap();
        assert_eq!((s2.num_generators(), s2.num_relators()), (0, 1));
    }

    #[test]
    fn exponent_spellings() {
        let a = parse("<x,y | x^3y^2x^2y^-1, x^-2y^2>").unwrap();
        let b = parse("<x,y | x3 y2 x2 y-1, x-2 y2>").unwrap();
        let c = parse("<x,y | x ^ 3 y^+2 x x y - 1, x^-2 y y>").unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        let d = parse("<x, x2 | x2 x>").unwrap();
        assert_eq!(word(&d, 0), vec![(1, 1), (0, 1)]);
        assert_eq!(word(&parse("<x | x^0>").unwrap(), 0), vec![]);
    }

    #[test]
    fn comments() {
        let p = parse("# a lens space spine\n<x | x^5>\n# trailing\n").unwrap();
        assert_eq!(p.exponent_matrix(), vec![vec![5]]);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse("<x | y>"),
            Err(PresentationError::UnknownGenerator { pos: 5, .. })
        ));
        assert!(matches!(
            parse("x | x>"),
            Err(PresentationError::Parse { pos: 0, .. })
        ));
        assert!(matches!(
            parse("<x | x^>"),
            Err(PresentationError::Parse { .. })
        ));
        assert!(matches!(
            parse("<x | x,>"),
            Err(PresentationError::Parse { .. })
        ));
        assert!(matches!(
            parse("<x | x> junk"),
            Err(PresentationError::Parse { .. })
        ));
        assert!(matches!(
            parse("<x, x | x>"),
            Err(PresentationError::DuplicateGenerator(_))
        ));
        assert!(matches!(
            parse("<x | 12>"),
            Err(PresentationError::Parse { .. })
        ));
    }
}
