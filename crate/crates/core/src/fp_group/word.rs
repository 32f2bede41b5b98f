use std::fmt;

use super::FpGroupError;

/// A generator or its formal inverse, encoded as `2 * generator + inverse`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u32);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter(2 * generator as u32 + inverse as u32)
    }

    pub fn generator(self) -> usize {
        (self.0 / 2) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }

    /// Column of this letter in a coset table.
    pub fn column(self) -> usize {
        self.0 as usize
    }

    pub fn exponent(self) -> i64 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }
}

/// A freely reduced word over signed generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    /// Freely reduces the given letters.
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    /// Positive word from generator indices.
    pub fn from_generators(gens: &[usize]) -> Self {
        Word::new(gens.iter().map(|&g| Letter::new(g, false)))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Self {
        Word::new(self.letters.iter().chain(other.letters.iter()).copied())
    }

    /// `self^k`; negative powers invert.
    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        Word::new(letters)
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self, generator_count: usize) -> Vec<i64> {
        let mut sums = vec![0; generator_count];
        for l in &self.letters {
            sums[l.generator()] += l.exponent();
        }
        sums
    }

    /// Cyclic rotation of the word, reduced again.
    pub fn rotate(&self, k: usize) -> Self {
        if self.letters.is_empty() {
            return self.clone();
        }
        let k = k % self.letters.len();
        let mut letters = self.letters[k..].to_vec();
        letters.extend_from_slice(&self.letters[..k]);
        Word::new(letters)
    }

    /// Renders with single-letter names: lowercase for generators, uppercase for inverses.
    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        DisplayWord { word: self, names }
    }

    /// Parses text such as `c(bac)^4cb` or `(bac)^-8` over single-character
    /// generator names; an uppercase letter denotes an inverse. `1` is the empty word.
    pub fn parse(text: &str, names: &[String]) -> Result<Word, FpGroupError> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut parser = Parser {
            chars: &chars,
            pos: 0,
            names,
        };
        let w = parser.sequence()?;
        if parser.pos != chars.len() {
            return Err(parser.error("unexpected ')'"));
        }
        Ok(w)
    }
}

struct DisplayWord<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        let single = self.names.iter().all(|n| n.chars().count() == 1);
        for (i, l) in self.word.letters.iter().enumerate() {
            let name = &self.names[l.generator()];
            if single {
                if l.is_inverse() {
                    write!(f, "{}", name.to_uppercase())?;
                } else {
                    write!(f, "{name}")?;
                }
            } else {
                if i > 0 {
                    f.write_str("*")?;
                }
                write!(f, "{name}")?;
                if l.is_inverse() {
                    f.write_str("^-1")?;
                }
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    chars: &'a [char],
    pos: usize,
    names: &'a [String],
}

impl Parser<'_> {
    fn error(&self, message: &str) -> FpGroupError {
        FpGroupError::Syntax {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn sequence(&mut self) -> Result<Word, FpGroupError> {
        let mut letters = Vec::new();
        while let Some(&c) = self.chars.get(self.pos) {
            if c == ')' {
                break;
            }
            let atom = self.atom()?;
            let atom = match self.chars.get(self.pos) {
                Some('^') => {
                    self.pos += 1;
                    atom.pow(self.exponent()?)
                }
                _ => atom,
            };
            letters.extend_from_slice(atom.letters());
        }
        Ok(Word::new(letters))
    }

    fn atom(&mut self) -> Result<Word, FpGroupError> {
        let c = self.chars[self.pos];
        match c {
            '(' => {
                self.pos += 1;
                let inner = self.sequence()?;
                if self.chars.get(self.pos) != Some(&')') {
                    return Err(self.error("unclosed '('"));
                }
                self.pos += 1;
                Ok(inner)
            }
            '1' => {
                self.pos += 1;
                Ok(Word::empty())
            }
            c if c.is_alphabetic() => {
                let lower = c.to_lowercase().to_string();
                let g = self
                    .names
                    .iter()
                    .position(|n| *n == lower)
                    .ok_or_else(|| FpGroupError::UnknownGenerator(c.to_string()))?;
                self.pos += 1;
                Ok(Word::new([Letter::new(g, c.is_uppercase())]))
            }
            _ => Err(self.error(&format!("unexpected {c:?}"))),
        }
    }

    fn exponent(&mut self) -> Result<i64, FpGroupError> {
        let negative = self.chars.get(self.pos) == Some(&'-');
        if negative {
            self.pos += 1;
        }
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected exponent"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        let k: i64 = digits.parse().map_err(|_| self.error("exponent too large"))?;
        Ok(if negative { -k } else { k })
    }
}
