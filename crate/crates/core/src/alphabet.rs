//! Finite indexed alphabets and patterns over them.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Index of a symbol within its [`Alphabet`].
pub type Symbol = u8;

/// An ordered set of distinct characters. Symbol `i` is `symbols()[i]`.
#[derive(Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<char>,
    lookup: HashMap<char, Symbol>,
}

impl Alphabet {
    pub fn new<I: IntoIterator<Item = char>>(symbols: I) -> Result<Self> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty".into()));
        }
        if symbols.len() > Symbol::MAX as usize + 1 {
            return Err(Error::InvalidAlphabet(format!(
                "{} symbols exceed the supported maximum of 256",
                symbols.len()
            )));
        }
        let mut lookup = HashMap::with_capacity(symbols.len());
        for (i, &c) in symbols.iter().enumerate() {
            if lookup.insert(c, i as Symbol).is_some() {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol {c:?}")));
            }
        }
        Ok(Alphabet { symbols, lookup })
    }

    /// The sorted set of distinct characters in `s`.
    pub fn from_chars(s: &str) -> Result<Self> {
        let mut chars: Vec<char> = s.chars().collect();
        chars.sort_unstable();
        chars.dedup();
        Alphabet::new(chars)
    }

    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn index(&self, c: char) -> Result<Symbol> {
        self.lookup.get(&c).copied().ok_or(Error::UnknownSymbol(c))
    }

    pub fn symbol(&self, i: Symbol) -> char {
        self.symbols[i as usize]
    }

    pub fn encode(&self, s: &str) -> Result<Vec<Symbol>> {
        s.chars().map(|c| self.index(c)).collect()
    }

    pub fn decode(&self, s: &[Symbol]) -> String {
        s.iter().map(|&i| self.symbol(i)).collect()
    }

    /// Checks that every index in `s` is a valid symbol.
    pub fn check(&self, s: &[Symbol]) -> Result<()> {
        match s.iter().find(|&&i| i as usize >= self.size()) {
            Some(&i) => Err(Error::SymbolOutOfRange(i as usize)),
            None => Ok(()),
        }
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet({:?})", self.symbols.iter().collect::<String>())
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.symbols.iter().collect::<String>())
    }
}

/// A nonempty pattern over an alphabet.
#[derive(Clone, PartialEq, Eq)]
pub struct Pattern {
    alphabet: Alphabet,
    symbols: Vec<Symbol>,
}

impl Pattern {
    pub fn new(alphabet: Alphabet, symbols: Vec<Symbol>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::EmptyPattern);
        }
        alphabet.check(&symbols)?;
        Ok(Pattern { alphabet, symbols })
    }

    pub fn parse(alphabet: &Alphabet, s: &str) -> Result<Self> {
        Pattern::new(alphabet.clone(), alphabet.encode(s)?)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn reversed(&self) -> Vec<Symbol> {
        self.symbols.iter().rev().copied().collect()
    }

    /// Length of the longest proper border (a prefix that is also a suffix).
    pub fn longest_proper_border(&self) -> usize {
        let s = &self.symbols;
        let m = s.len();
        (1..m).rev().find(|&b| s[..b] == s[m - b..]).unwrap_or(0)
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pattern({:?})", self.alphabet.decode(&self.symbols))
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.alphabet.decode(&self.symbols))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indices_round_trip() {
        let a = Alphabet::new("acgt".chars()).unwrap();
        for i in 0..4 {
            assert_eq!(a.index(a.symbol(i)).unwrap(), i);
        }
        assert_eq!(a.decode(&a.encode("gattaca").unwrap()), "gattaca");
    }

    #[test]
    fn rejects_duplicates_and_empty() {
        assert!(Alphabet::new("aba".chars()).is_err());
        assert!(Alphabet::new("".chars()).is_err());
        let a = Alphabet::from_chars("ba").unwrap();
        assert!(matches!(Pattern::parse(&a, ""), Err(Error::EmptyPattern)));
        assert!(matches!(
            Pattern::parse(&a, "abc"),
            Err(Error::UnknownSymbol('c'))
        ));
    }

    #[test]
    fn from_chars_sorts() {
        assert_eq!(Alphabet::from_chars("bab").unwrap().symbols(), &['a', 'b']);
    }

    #[test]
    fn borders() {
        let a = Alphabet::from_chars("ab").unwrap();
        let border = |s| Pattern::parse(&a, s).unwrap().longest_proper_border();
        assert_eq!(border("aa"), 1);
        assert_eq!(border("ab"), 0);
        assert_eq!(border("abab"), 2);
        assert_eq!(border("aabaa"), 2);
        assert_eq!(border("a"), 0);
    }
}
