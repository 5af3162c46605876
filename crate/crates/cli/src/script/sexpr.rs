//! Parenthesized surface syntax: tokens, trees with source positions, and a
//! width-aware printer.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{pos}: {message}")]
pub struct SyntaxError {
    pub pos: Pos,
    pub message: String,
}

impl SyntaxError {
    pub fn new(pos: Pos, message: impl Into<String>) -> Self {
        Self { pos, message: message.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SExpr {
    Atom(String, Pos),
    List(Vec<SExpr>, Pos),
}

impl SExpr {
    pub fn atom(s: impl Into<String>) -> Self {
        SExpr::Atom(s.into(), Pos::default())
    }

    pub fn list(items: Vec<SExpr>) -> Self {
        SExpr::List(items, Pos::default())
    }

    pub fn pos(&self) -> Pos {
        match self {
            SExpr::Atom(_, p) | SExpr::List(_, p) => *p,
        }
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            SExpr::Atom(s, _) => Some(s),
            SExpr::List(..) => None,
        }
    }

    /// The head keyword of a list.
    pub fn head(&self) -> Option<&str> {
        match self {
            SExpr::List(items, _) => items.first().and_then(SExpr::as_atom),
            SExpr::Atom(..) => None,
        }
    }

    /// Renders on one line.
    pub fn flat(&self) -> String {
        match self {
            SExpr::Atom(s, _) => s.clone(),
            SExpr::List(items, _) => {
                let inner: Vec<String> = items.iter().map(SExpr::flat).collect();
                format!("({})", inner.join(" "))
            }
        }
    }

    /// Renders within `width` columns where possible: a list that does not
    /// fit keeps its leading atoms on the first line and puts each
    /// remaining item on its own indented line.
    pub fn pretty(&self, width: usize) -> String {
        let mut out = String::new();
        self.pretty_into(0, width, &mut out);
        out
    }

    fn pretty_into(&self, indent: usize, width: usize, out: &mut String) {
        let flat = self.flat();
        let SExpr::List(items, _) = self else {
            out.push_str(&flat);
            return;
        };
        if indent + flat.len() <= width || items.is_empty() {
            out.push_str(&flat);
            return;
        }
        let lead = items.iter().take_while(|i| matches!(i, SExpr::Atom(..))).count();
        out.push('(');
        let (first, indent) = if lead == 0 {
            items[0].pretty_into(indent + 1, width, out);
            (1, indent + 1)
        } else {
            let head: Vec<String> = items[..lead].iter().map(SExpr::flat).collect();
            out.push_str(&head.join(" "));
            (lead, indent + 2)
        };
        for item in &items[first..] {
            out.push('\n');
            out.push_str(&" ".repeat(indent));
            item.pretty_into(indent, width, out);
        }
        out.push(')');
    }
}

fn is_delimiter(c: char) -> bool {
    c.is_whitespace() || c == '(' || c == ')' || c == ';'
}

/// Reads every top-level expression of `text`.
pub fn read_all(text: &str) -> Result<Vec<SExpr>, SyntaxError> {
    let mut stack: Vec<(Vec<SExpr>, Pos)> = Vec::new();
    let mut top = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if c == ';' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                chars.next();
            }
            continue;
        }
        if c == '(' {
            chars.next();
            col += 1;
            stack.push((Vec::new(), pos));
            continue;
        }
        let item = if c == ')' {
            chars.next();
            col += 1;
            let Some((items, open)) = stack.pop() else {
                return Err(SyntaxError::new(pos, "unbalanced `)`"));
            };
            SExpr::List(items, open)
        } else {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if is_delimiter(c) {
                    break;
                }
                s.push(c);
                chars.next();
                col += 1;
            }
            SExpr::Atom(s, pos)
        };
        match stack.last_mut() {
            Some((items, _)) => items.push(item),
            None => top.push(item),
        }
    }
    if let Some((_, open)) = stack.pop() {
        return Err(SyntaxError::new(open, "unclosed `(`"));
    }
    Ok(top)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_nested_lists_with_positions() {
        let e = read_all("; note\n(a (b c)\n  d)").unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].flat(), "(a (b c) d)");
        assert_eq!(e[0].pos(), Pos { line: 2, col: 1 });
        let SExpr::List(items, _) = &e[0] else { panic!() };
        assert_eq!(items[2].pos(), Pos { line: 3, col: 3 });
    }

    #[test]
    fn unbalanced_delimiters_are_located() {
        assert_eq!(read_all("(a\n (b)").unwrap_err().pos, Pos { line: 1, col: 1 });
        let err = read_all("(a))").unwrap_err();
        assert_eq!(err.pos, Pos { line: 1, col: 4 });
        assert!(err.message.contains(')'));
    }

    #[test]
    fn pretty_printing_reads_back() {
        let e = &read_all("(promote ((a (axiom a (N x))) (b (axiom b (N y)))) (app (axiom a p) (axiom b q)))").unwrap()[0];
        let p = e.pretty(30);
        assert!(p.lines().count() > 1);
        assert!(p.lines().all(|l| !l.ends_with(' ')));
        assert_eq!(read_all(&p).unwrap()[0].flat(), e.flat());
    }
}
