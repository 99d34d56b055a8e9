//! Composition tree files.
//!
//! ```text
//! # a coin picks one of two dice
//! branch:
//!   - 0.5 leaf: 1 1 1 1 1 1
//!   - 1/2 leaf: die.hist
//! ```
//!
//! The root line is `branch:` or `leaf: <spec>`. A branch's children are the
//! lines below it indented deeper than it, all at the same indentation, each
//! written `- <prob> branch:` or `- <prob> leaf: <spec>`. Probabilities are
//! decimals or fractions `a/b`. A leaf spec is either inline numbers separated
//! by spaces or commas (all integers: counts, otherwise probabilities) or a
//! path to a histogram file, relative to the tree file's directory.
//!
//! Indentation is spaces only. `#` starts a comment and blank lines are
//! skipped.

use std::path::{Path, PathBuf};

use shannon_core::{CompTree, RationalDist, RealDist};

use crate::histogram::{self, Histogram};
use crate::CliError;

struct Line {
    number: usize,
    indent: usize,
    text: String,
}

fn lines(text: &str) -> Result<Vec<Line>, CliError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let number = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim_end();
        if content.is_empty() {
            continue;
        }
        let body = content.trim_start_matches(' ');
        if body.starts_with('\t') {
            return Err(CliError::parse(number, "indent with spaces, not tabs"));
        }
        out.push(Line {
            number,
            indent: content.len() - body.len(),
            text: body.to_string(),
        });
    }
    Ok(out)
}

fn parse_prob(raw: &str, line: usize) -> Result<f64, CliError> {
    let bad = || CliError::parse(line, format!("`{raw}` is not a probability"));
    match raw.split_once('/') {
        Some((num, den)) => {
            let num: f64 = num.parse().map_err(|_| bad())?;
            let den: f64 = den.parse().map_err(|_| bad())?;
            if den == 0.0 {
                return Err(bad());
            }
            Ok(num / den)
        }
        None => raw.parse().map_err(|_| bad()),
    }
}

struct Parser<'a> {
    lines: Vec<Line>,
    pos: usize,
    dir: Option<&'a Path>,
}

impl Parser<'_> {
    fn node(&mut self, text: &str, line: usize, indent: usize) -> Result<CompTree, CliError> {
        if text == "branch:" {
            return self.branch(line, indent);
        }
        if let Some(spec) = text.strip_prefix("leaf:") {
            return self.leaf(spec.trim(), line);
        }
        Err(CliError::parse(
            line,
            "expected `branch:` or `leaf: <spec>`",
        ))
    }

    fn branch(&mut self, line: usize, indent: usize) -> Result<CompTree, CliError> {
        let child_indent = match self.lines.get(self.pos) {
            Some(next) if next.indent > indent => next.indent,
            _ => return Err(CliError::parse(line, "branch has no children")),
        };
        let mut children = Vec::new();
        while let Some(next) = self.lines.get(self.pos) {
            if next.indent <= indent {
                break;
            }
            let (number, text) = (next.number, next.text.clone());
            if next.indent != child_indent {
                return Err(CliError::parse(number, "inconsistent indentation"));
            }
            self.pos += 1;
            let rest = text
                .strip_prefix("- ")
                .ok_or_else(|| CliError::parse(number, "child lines start with `- <prob>`"))?
                .trim_start();
            let (prob, node) = rest
                .split_once(' ')
                .ok_or_else(|| CliError::parse(number, "expected `- <prob> <node>`"))?;
            let prob = parse_prob(prob, number)?;
            children.push((prob, self.node(node.trim(), number, child_indent)?));
        }
        Ok(CompTree::Branch(children))
    }

    fn leaf(&mut self, spec: &str, line: usize) -> Result<CompTree, CliError> {
        if spec.is_empty() {
            return Err(CliError::parse(
                line,
                "leaf needs counts, probabilities or a file",
            ));
        }
        let tokens: Vec<&str> = spec
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .collect();
        let inline = tokens.iter().all(|t| t.parse::<f64>().is_ok());
        if inline {
            return inline_leaf(&tokens, line);
        }

        let path = match self.dir {
            Some(dir) => dir.join(spec),
            None => PathBuf::from(spec),
        };
        let text = std::fs::read_to_string(&path).map_err(|e| {
            CliError::Usage(format!("line {line}: cannot read {}: {e}", path.display()))
        })?;
        let hist = histogram::parse(&text).map_err(|e| match e {
            CliError::Parse {
                line: inner,
                message,
            } => CliError::parse(line, format!("{} line {inner}: {message}", path.display())),
            CliError::Validation(m) => {
                CliError::Validation(format!("line {line}: {}: {m}", path.display()))
            }
            other => other,
        })?;
        Ok(match hist {
            Histogram::Counts(d) => CompTree::leaf(d),
            Histogram::Probs(d) => CompTree::leaf(d),
        })
    }
}

fn inline_leaf(tokens: &[&str], line: usize) -> Result<CompTree, CliError> {
    let invalid = |e: shannon_core::Error| CliError::Validation(format!("line {line}: {e}"));
    if tokens.iter().any(|t| t.contains(['.', 'e', 'E'])) {
        let probs = tokens.iter().map(|t| t.parse::<f64>().unwrap()).collect();
        Ok(CompTree::leaf(RealDist::new(probs).map_err(invalid)?))
    } else {
        let counts = tokens
            .iter()
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| CliError::parse(line, format!("`{t}` is not a count")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CompTree::leaf(
            RationalDist::from_signed(&counts).map_err(invalid)?,
        ))
    }
}

/// Parses tree text. Leaf file paths resolve against `dir` when given.
///
/// The result is structurally complete but not yet checked for branch
/// probabilities; see [`shannon_core::validate`].
pub fn parse(text: &str, dir: Option<&Path>) -> Result<CompTree, CliError> {
    let mut parser = Parser {
        lines: lines(text)?,
        pos: 0,
        dir,
    };
    let Some(root) = parser.lines.first() else {
        return Err(CliError::parse(1, "tree file is empty"));
    };
    let (number, indent, text) = (root.number, root.indent, root.text.clone());
    parser.pos = 1;
    let tree = parser.node(&text, number, indent)?;
    if let Some(extra) = parser.lines.get(parser.pos) {
        return Err(CliError::parse(
            extra.number,
            "a tree file has a single root",
        ));
    }
    Ok(tree)
}

/// Reads and parses a tree file.
pub fn read(path: &Path) -> Result<CompTree, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse(&text, path.parent())
}

#[cfg(test)]
mod tests {
    use super::*;
    use shannon_core::{validate, Dist};

    const COIN_AND_DICE: &str = "\
# a coin picks one of two dice
branch:
  - 0.5 leaf: 1 1 1 1 1 1
  - 1/2 leaf: 1,1,1,1,1,1
";

    #[test]
    fn coin_and_dice() {
        let tree = parse(COIN_AND_DICE, None).unwrap();
        assert_eq!(tree, shannon_core::composition::coin_and_two_dice());
    }

    #[test]
    fn nested_and_real_leaves() {
        let text = "branch:\n    - 0.25 leaf: 0.5 0.5\n    - 0.75 branch:\n        - 1 leaf: 3 7\n";
        let tree = parse(text, None).unwrap();
        let CompTree::Branch(children) = &tree else {
            panic!()
        };
        assert_eq!(children.len(), 2);
        assert!(matches!(children[0].1, CompTree::Leaf(Dist::Real(_))));
        let CompTree::Branch(inner) = &children[1].1 else {
            panic!()
        };
        assert_eq!(inner[0].0, 1.0);
        assert_eq!(validate(&tree), Ok(()));
    }

    #[test]
    fn single_leaf() {
        let tree = parse("leaf: 2 2", None).unwrap();
        assert!(matches!(tree, CompTree::Leaf(Dist::Rational(_))));
    }

    #[test]
    fn bad_sum_parses_then_fails_validation() {
        let tree = parse("branch:\n  - 0.45 leaf: 1\n  - 0.45 leaf: 1\n", None).unwrap();
        assert_eq!(
            validate(&tree).unwrap_err().to_string(),
            "node root: branch probabilities sum to 0.9"
        );
    }

    #[test]
    fn structural_errors() {
        for (text, line) in [
            ("", 1),
            ("branch:\n", 1),
            ("branch:\nleaf: 1\n", 1),
            ("bush:\n", 1),
            ("leaf: 1\nleaf: 2\n", 2),
            ("branch:\n  - 0.5 leaf: 1\n    - 0.5 leaf: 1\n", 3),
            ("branch:\n  0.5 leaf: 1\n", 2),
            ("branch:\n  - half leaf: 1\n", 2),
            ("branch:\n  - 1/0 leaf: 1\n", 2),
            ("branch:\n\t- 1 leaf: 1\n", 2),
            ("leaf:\n", 1),
            ("leaf: 1 2.5e\n", 1),
        ] {
            match parse(text, None) {
                Err(CliError::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                Err(CliError::Usage(_)) if text.starts_with("leaf: 1 2.5e") => {}
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn leaf_validation_errors() {
        let err = parse("leaf: -1 2", None).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        let err = parse("leaf: 0.5 0.4", None).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn leaf_files_resolve_against_tree_dir() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("die.hist"), "1\n1\n1\n1\n1\n1\n").unwrap();
        let tree_path = dir.path().join("t.tree");
        std::fs::write(
            &tree_path,
            "branch:\n  - 0.5 leaf: die.hist\n  - 0.5 leaf: die.hist\n",
        )
        .unwrap();
        assert_eq!(
            read(&tree_path).unwrap(),
            shannon_core::composition::coin_and_two_dice()
        );

        std::fs::write(&tree_path, "leaf: missing.hist\n").unwrap();
        assert_eq!(read(&tree_path).unwrap_err().exit_code(), 2);

        std::fs::write(dir.path().join("bad.hist"), "1\nx\n").unwrap();
        std::fs::write(&tree_path, "\nleaf: bad.hist\n").unwrap();
        match read(&tree_path).unwrap_err() {
            CliError::Parse { line, message } => {
                assert_eq!(line, 2);
                assert!(
                    message.ends_with("bad.hist line 2: `x` is not a count"),
                    "{message}"
                );
            }
            other => panic!("{other:?}"),
        }
    }
}
