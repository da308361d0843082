use std::fmt;

use super::LangError;

/// Index of a letter in an ordered alphabet.
pub type Symbol = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ast {
    Epsilon,
    Letter(Symbol),
    Concat(Vec<Ast>),
    Alt(Vec<Ast>),
    Star(Box<Ast>),
    Plus(Box<Ast>),
}

/// A parsed regular expression over an explicit alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Regex {
    pub ast: Ast,
    pub alphabet: Vec<char>,
}

/// Parses `text` with the grammar
///
/// ```text
/// alt    := concat ('|' concat)*
/// concat := repeat*
/// repeat := atom ('*' | '+')*
/// atom   := letter | '.' | '(' alt ')'
/// ```
///
/// `.` stands for the union of all letters of `alphabet`. Whitespace is ignored.
pub fn parse_regex(text: &str, alphabet: &str) -> Result<Regex, LangError> {
    let alphabet = super::parse_alphabet(alphabet)?;
    let chars: Vec<(usize, char)> = text
        .chars()
        .enumerate()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    let mut p = Parser {
        chars: &chars,
        at: 0,
        alphabet: &alphabet,
    };
    let ast = p.alt()?;
    if let Some(&(pos, c)) = chars.get(p.at) {
        return Err(LangError::Syntax {
            position: pos,
            message: format!("unexpected {c:?}"),
        });
    }
    Ok(Regex { ast, alphabet })
}

struct Parser<'a> {
    chars: &'a [(usize, char)],
    at: usize,
    alphabet: &'a [char],
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn position(&self) -> usize {
        self.chars
            .get(self.at)
            .map_or_else(|| self.chars.last().map_or(0, |&(p, _)| p + 1), |&(p, _)| p)
    }

    fn alt(&mut self) -> Result<Ast, LangError> {
        let mut branches = vec![self.concat()?];
        while self.peek() == Some('|') {
            self.at += 1;
            branches.push(self.concat()?);
        }
        Ok(if branches.len() == 1 {
            branches.pop().unwrap()
        } else {
            Ast::Alt(branches)
        })
    }

    fn concat(&mut self) -> Result<Ast, LangError> {
        let mut items = Vec::new();
        while let Some(c) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            items.push(self.repeat()?);
        }
        Ok(match items.len() {
            0 => Ast::Epsilon,
            1 => items.pop().unwrap(),
            _ => Ast::Concat(items),
        })
    }

    fn repeat(&mut self) -> Result<Ast, LangError> {
        let mut node = self.atom()?;
        loop {
            match self.peek() {
                Some('*') => node = Ast::Star(Box::new(node)),
                Some('+') => node = Ast::Plus(Box::new(node)),
                _ => return Ok(node),
            }
            self.at += 1;
        }
    }

    fn atom(&mut self) -> Result<Ast, LangError> {
        let position = self.position();
        let Some(c) = self.peek() else {
            return Err(LangError::Syntax {
                position,
                message: "unexpected end of pattern".into(),
            });
        };
        self.at += 1;
        match c {
            '(' => {
                let inner = self.alt()?;
                if self.peek() != Some(')') {
                    return Err(LangError::Syntax {
                        position: self.position(),
                        message: "expected ')'".into(),
                    });
                }
                self.at += 1;
                Ok(inner)
            }
            '.' => Ok(match self.alphabet.len() {
                1 => Ast::Letter(0),
                k => Ast::Alt((0..k).map(Ast::Letter).collect()),
            }),
            '*' | '+' | ')' | '|' => Err(LangError::Syntax {
                position,
                message: format!("unexpected {c:?}"),
            }),
            _ => self
                .alphabet
                .iter()
                .position(|&a| a == c)
                .map(Ast::Letter)
                .ok_or(LangError::LetterOutsideAlphabet { letter: c, position }),
        }
    }
}

impl fmt::Display for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(ast: &Ast, alpha: &[char], f: &mut fmt::Formatter<'_>, tight: bool) -> fmt::Result {
            match ast {
                Ast::Epsilon => f.write_str("()"),
                Ast::Letter(a) => write!(f, "{}", alpha[*a]),
                Ast::Concat(items) => {
                    if tight {
                        f.write_str("(")?;
                    }
                    for it in items {
                        go(it, alpha, f, matches!(it, Ast::Concat(_)))?;
                    }
                    if tight {
                        f.write_str(")")?;
                    }
                    Ok(())
                }
                Ast::Alt(items) => {
                    f.write_str("(")?;
                    for (i, it) in items.iter().enumerate() {
                        if i > 0 {
                            f.write_str("|")?;
                        }
                        go(it, alpha, f, false)?;
                    }
                    f.write_str(")")
                }
                Ast::Star(inner) | Ast::Plus(inner) => {
                    let atomic = matches!(**inner, Ast::Letter(_) | Ast::Alt(_));
                    go(inner, alpha, f, !atomic)?;
                    f.write_str(if matches!(ast, Ast::Star(_)) { "*" } else { "+" })
                }
            }
        }
        go(&self.ast, &self.alphabet, f, false)
    }
}

/// Thompson NFA with epsilon moves. State 0 is initial, `accept` is final.
pub(crate) struct Nfa {
    pub eps: Vec<Vec<usize>>,
    pub moves: Vec<Vec<(Symbol, usize)>>,
    pub accept: usize,
}

impl Nfa {
    pub fn thompson(ast: &Ast) -> Nfa {
        let mut nfa = Nfa {
            eps: Vec::new(),
            moves: Vec::new(),
            accept: 0,
        };
        let start = nfa.fresh();
        let end = nfa.fresh();
        nfa.build(ast, start, end);
        nfa.accept = end;
        nfa
    }

    fn fresh(&mut self) -> usize {
        self.eps.push(Vec::new());
        self.moves.push(Vec::new());
        self.eps.len() - 1
    }

    fn build(&mut self, ast: &Ast, from: usize, to: usize) {
        match ast {
            Ast::Epsilon => self.eps[from].push(to),
            Ast::Letter(a) => self.moves[from].push((*a, to)),
            Ast::Concat(items) => {
                let mut cur = from;
                for (i, it) in items.iter().enumerate() {
                    let next = if i + 1 == items.len() { to } else { self.fresh() };
                    self.build(it, cur, next);
                    cur = next;
                }
            }
            Ast::Alt(items) => {
                for it in items {
                    self.build(it, from, to);
                }
            }
            Ast::Star(inner) | Ast::Plus(inner) => {
                let a = self.fresh();
                let b = self.fresh();
                self.eps[from].push(a);
                self.build(inner, a, b);
                self.eps[b].push(a);
                self.eps[b].push(to);
                if matches!(ast, Ast::Star(_)) {
                    self.eps[from].push(to);
                }
            }
        }
    }

    pub fn len(&self) -> usize {
        self.eps.len()
    }

    /// Epsilon closure of `set`, returned sorted.
    pub fn close(&self, set: &mut Vec<usize>) {
        let mut seen = vec![false; self.len()];
        let mut stack: Vec<usize> = std::mem::take(set);
        while let Some(q) = stack.pop() {
            if !seen[q] {
                seen[q] = true;
                stack.extend(self.eps[q].iter().copied());
            }
        }
        set.extend((0..self.len()).filter(|&q| seen[q]));
    }
}
