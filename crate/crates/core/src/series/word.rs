use std::fmt;

use super::context::{GradingContext, Parity};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Tau,
    T,
}

impl Letter {
    pub fn parity(self, ctx: &GradingContext) -> Parity {
        match self {
            Letter::Tau => Parity::Odd,
            Letter::T => ctx.t_parity(),
        }
    }

    pub fn degree(self, ctx: &GradingContext) -> i64 {
        match self {
            Letter::Tau => ctx.tau_degree(),
            Letter::T => ctx.t_degree(),
        }
    }

    fn bit(self) -> u64 {
        match self {
            Letter::Tau => 0,
            Letter::T => 1,
        }
    }
}

/// A word in `τ` and `t`, packed with the first letter most significant.
///
/// The derived order compares length first and then letters left to right
/// with `τ < t`, which is the canonical order for printing.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    len: u8,
    bits: u64,
}

impl Word {
    pub const EMPTY: Word = Word { len: 0, bits: 0 };

    pub fn letter(l: Letter) -> Word {
        Word { len: 1, bits: l.bit() }
    }

    pub fn from_letters(letters: &[Letter]) -> Word {
        letters.iter().fold(Word::EMPTY, |w, &l| w.concat(Word::letter(l)))
    }

    pub fn t_power(k: usize) -> Word {
        Word::from_letters(&vec![Letter::T; k])
    }

    pub fn len(self) -> usize {
        self.len as usize
    }

    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    pub fn concat(self, other: Word) -> Word {
        debug_assert!(self.len() + other.len() <= 64);
        let bits = if other.len == 0 { self.bits } else { (self.bits << other.len) | other.bits };
        Word { len: self.len + other.len, bits }
    }

    pub fn get(self, i: usize) -> Letter {
        if (self.bits >> (self.len() - 1 - i)) & 1 == 1 {
            Letter::T
        } else {
            Letter::Tau
        }
    }

    pub fn letters(self) -> impl Iterator<Item = Letter> {
        (0..self.len()).map(move |i| self.get(i))
    }

    /// First `i` letters.
    pub fn prefix(self, i: usize) -> Word {
        Word { len: i as u8, bits: if i == 0 { 0 } else { self.bits >> (self.len() - i) } }
    }

    /// Letters after position `i`.
    pub fn suffix_after(self, i: usize) -> Word {
        let k = self.len() - i - 1;
        Word { len: k as u8, bits: if k == 0 { 0 } else { self.bits & ((1u64 << k) - 1) } }
    }

    pub fn count_tau(self) -> usize {
        self.len() - self.bits.count_ones() as usize
    }

    pub fn count_t(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_pure_t(self) -> bool {
        self.count_tau() == 0
    }

    pub fn parity(self, ctx: &GradingContext) -> Parity {
        let odd_letters = self.count_tau() + if ctx.t_is_odd() { self.count_t() } else { 0 };
        Parity::of(odd_letters as i64)
    }

    pub fn degree(self, ctx: &GradingContext) -> i64 {
        self.count_tau() as i64 * ctx.tau_degree() + self.count_t() as i64 * ctx.t_degree()
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl fmt::Display for Word {
    /// Runs are collapsed into powers: `tau^2*t`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        let letters: Vec<Letter> = self.letters().collect();
        let mut i = 0;
        let mut first = true;
        while i < letters.len() {
            let l = letters[i];
            let mut j = i;
            while j < letters.len() && letters[j] == l {
                j += 1;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(if l == Letter::Tau { "tau" } else { "t" })?;
            if j - i > 1 {
                write!(f, "^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}
