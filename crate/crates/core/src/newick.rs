//! Newick reading and writing.
//!
//! Branch lengths, internal vertex labels and bracketed comments are accepted
//! and discarded. Labels are opaque, case-sensitive strings; quoted labels
//! follow the usual `'...'` convention with `''` as an escaped quote.

use crate::error::{Error, Result};
use crate::forest::Forest;
use crate::tree::{NodeId, PhyloTree, Shape};

/// Parses exactly one `;`-terminated tree.
pub fn parse_newick(text: &str) -> Result<PhyloTree> {
    let mut p = Parser::new(text);
    p.skip_ws()?;
    if p.at_end() {
        return Err(Error::EmptyTree);
    }
    let tree = p.tree()?;
    p.skip_ws()?;
    if !p.at_end() {
        return Err(p.error("unexpected text after `;`"));
    }
    Ok(tree)
}

/// Parses a sequence of `;`-terminated trees, e.g. one per line.
pub fn parse_newick_trees(text: &str) -> Result<Vec<PhyloTree>> {
    let mut p = Parser::new(text);
    let mut trees = Vec::new();
    loop {
        p.skip_ws()?;
        if p.at_end() {
            return Ok(trees);
        }
        trees.push(p.tree()?);
    }
}

/// Parses a forest written as one Newick expression per component.
pub fn parse_forest(text: &str) -> Result<Forest> {
    Forest::new(parse_newick_trees(text)?)
}

pub fn write_newick(t: &PhyloTree) -> String {
    let mut out = String::new();
    write_node(t, t.root(), &mut out);
    out.push(';');
    out
}

/// One component per line, each terminated by a newline.
pub fn write_forest(f: &Forest) -> String {
    let mut out = String::new();
    for c in f.components() {
        out.push_str(&write_newick(c));
        out.push('\n');
    }
    out
}

fn write_node(t: &PhyloTree, v: NodeId, out: &mut String) {
    match t.label(v) {
        Some(label) => write_label(label, out),
        None => {
            out.push('(');
            for (i, &c) in t.children(v).iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_node(t, c, out);
            }
            out.push(')');
        }
    }
}

fn needs_quotes(label: &str) -> bool {
    label.is_empty()
        || label
            .chars()
            .any(|c| c.is_whitespace() || "()[]':;,".contains(c))
}

fn write_label(label: &str, out: &mut String) {
    if needs_quotes(label) {
        out.push('\'');
        out.push_str(&label.replace('\'', "''"));
        out.push('\'');
    } else {
        out.push_str(label);
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { text, pos: 0 }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            position: self.pos,
            message: message.into(),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.text.len()
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) -> Result<()> {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '[' {
                let start = self.pos;
                match self.text[self.pos..].find(']') {
                    Some(end) => self.pos += end + 1,
                    None => {
                        self.pos = start;
                        return Err(self.error("unterminated comment"));
                    }
                }
            } else {
                break;
            }
        }
        Ok(())
    }

    fn expect(&mut self, want: char) -> Result<()> {
        self.skip_ws()?;
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected `{want}`, found `{c}`"))),
            None => Err(self.error(format!("expected `{want}`, found end of input"))),
        }
    }

    fn tree(&mut self) -> Result<PhyloTree> {
        let shape = self.subtree()?;
        self.expect(';')?;
        PhyloTree::from_shape(shape).map_err(|e| match e {
            Error::EmptyTree => self.error("tree has no leaves"),
            other => other,
        })
    }

    fn subtree(&mut self) -> Result<Shape> {
        self.skip_ws()?;
        let shape = if self.peek() == Some('(') {
            self.bump();
            let mut children = vec![self.subtree()?];
            loop {
                self.skip_ws()?;
                match self.peek() {
                    Some(',') => {
                        self.bump();
                        children.push(self.subtree()?);
                    }
                    Some(')') => {
                        self.bump();
                        break;
                    }
                    Some(c) => return Err(self.error(format!("expected `,` or `)`, found `{c}`"))),
                    None => return Err(self.error("unbalanced parentheses")),
                }
            }
            // Internal labels are read and dropped.
            self.label()?;
            Shape::Internal(children)
        } else {
            let start = self.pos;
            match self.label()? {
                Some(l) => Shape::Leaf(l),
                None => {
                    self.pos = start;
                    return Err(self.error("missing leaf label"));
                }
            }
        };
        self.branch_length()?;
        Ok(shape)
    }

    fn label(&mut self) -> Result<Option<String>> {
        self.skip_ws()?;
        match self.peek() {
            Some('\'') => {
                let start = self.pos;
                self.bump();
                let mut label = String::new();
                loop {
                    match self.bump() {
                        Some('\'') if self.peek() == Some('\'') => {
                            self.bump();
                            label.push('\'');
                        }
                        Some('\'') => break,
                        Some(c) => label.push(c),
                        None => {
                            self.pos = start;
                            return Err(self.error("unterminated quoted label"));
                        }
                    }
                }
                if label.is_empty() {
                    self.pos = start;
                    return Err(self.error("empty quoted label"));
                }
                Ok(Some(label))
            }
            _ => {
                let start = self.pos;
                while let Some(c) = self.peek() {
                    if c.is_whitespace() || "()[]':;,".contains(c) {
                        break;
                    }
                    self.bump();
                }
                Ok((self.pos > start).then(|| self.text[start..self.pos].to_owned()))
            }
        }
    }

    fn branch_length(&mut self) -> Result<()> {
        self.skip_ws()?;
        if self.peek() != Some(':') {
            return Ok(());
        }
        self.bump();
        self.skip_ws()?;
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() || matches!(c, '.' | 'e' | 'E' | '+' | '-') {
                self.bump();
            } else {
                break;
            }
        }
        if self.text[start..self.pos].parse::<f64>().is_err() {
            self.pos = start;
            return Err(self.error("invalid branch length"));
        }
        Ok(())
    }
}
