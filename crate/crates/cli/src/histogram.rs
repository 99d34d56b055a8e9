//! Histogram files.
//!
//! One record per line, either `label<TAB>value` or a bare `value`. Bare
//! records are labelled `o0`, `o1`, ... by record index when any other record
//! carries a label; a file with no labels at all yields an unlabelled
//! distribution. `#` starts a comment, blank lines are skipped.
//!
//! Values are counts (integers) or probabilities (anything containing `.`,
//! `e` or `E`). A file uses one mode throughout.

use shannon_core::{Error, RationalDist, RealDist};

use crate::CliError;

/// A parsed histogram file.
#[derive(Debug, Clone, PartialEq)]
pub enum Histogram {
    /// Integer counts.
    Counts(RationalDist),
    /// Real probabilities.
    Probs(RealDist),
}

impl Histogram {
    pub fn mode(&self) -> &'static str {
        match self {
            Histogram::Counts(_) => "counts",
            Histogram::Probs(_) => "probabilities",
        }
    }
}

enum Value {
    Count(i128),
    Prob(f64),
}

struct Record {
    line: usize,
    label: Option<String>,
    value: Value,
}

fn parse_value(raw: &str, line: usize) -> Result<Value, CliError> {
    if raw.contains(['.', 'e', 'E']) {
        raw.parse::<f64>()
            .map(Value::Prob)
            .map_err(|_| CliError::parse(line, format!("`{raw}` is not a probability")))
    } else {
        raw.parse::<i128>()
            .map(Value::Count)
            .map_err(|_| CliError::parse(line, format!("`{raw}` is not a count")))
    }
}

fn records(text: &str) -> Result<Vec<Record>, CliError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim_end_matches('\r');
        if content.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split('\t').collect();
        let (label, value) = match fields.as_slice() {
            [value] => (None, *value),
            [label, value] => {
                let label = label.trim();
                if label.is_empty() {
                    return Err(CliError::parse(line, "empty label"));
                }
                (Some(label.to_string()), *value)
            }
            _ => {
                return Err(CliError::parse(
                    line,
                    "expected `value` or `label<TAB>value`",
                ))
            }
        };
        out.push(Record {
            line,
            label,
            value: parse_value(value.trim(), line)?,
        });
    }
    Ok(out)
}

fn labels(records: &[Record]) -> Option<Vec<String>> {
    records.iter().any(|r| r.label.is_some()).then(|| {
        records
            .iter()
            .enumerate()
            .map(|(i, r)| r.label.clone().unwrap_or_else(|| format!("o{i}")))
            .collect()
    })
}

fn validation(err: Error, lines: &[usize]) -> CliError {
    let msg = match err {
        Error::NegativeCount { index, .. } => format!("negative count at line {}", lines[index]),
        Error::NegativeProbability { index, .. } => {
            format!("negative probability at line {}", lines[index])
        }
        Error::NonFiniteProbability { index } => {
            format!("non-finite probability at line {}", lines[index])
        }
        other => other.to_string(),
    };
    CliError::Validation(msg)
}

/// Parses histogram text.
pub fn parse(text: &str) -> Result<Histogram, CliError> {
    let records = records(text)?;
    let Some(first) = records.first() else {
        return Err(CliError::Validation("histogram has no records".into()));
    };
    let counting = matches!(first.value, Value::Count(_));
    let lines: Vec<usize> = records.iter().map(|r| r.line).collect();
    let labels = labels(&records);

    if counting {
        let mut counts = Vec::with_capacity(records.len());
        for r in &records {
            match r.value {
                Value::Count(n) if n < 0 => {
                    return Err(CliError::Validation(format!(
                        "negative count at line {}",
                        r.line
                    )))
                }
                Value::Count(n) => counts.push(
                    u64::try_from(n)
                        .map_err(|_| CliError::parse(r.line, "count does not fit in 64 bits"))?,
                ),
                Value::Prob(_) => {
                    return Err(CliError::parse(
                        r.line,
                        "file mixes counts and probabilities",
                    ))
                }
            }
        }
        let mut dist = RationalDist::new(counts).map_err(|e| validation(e, &lines))?;
        if let Some(labels) = labels {
            dist = dist
                .with_labels(labels)
                .map_err(|e| validation(e, &lines))?;
        }
        Ok(Histogram::Counts(dist))
    } else {
        let mut probs = Vec::with_capacity(records.len());
        for r in &records {
            match r.value {
                Value::Prob(p) => probs.push(p),
                Value::Count(_) => {
                    return Err(CliError::parse(
                        r.line,
                        "file mixes counts and probabilities",
                    ))
                }
            }
        }
        let mut dist = RealDist::new(probs).map_err(|e| validation(e, &lines))?;
        if let Some(labels) = labels {
            dist = dist
                .with_labels(labels)
                .map_err(|e| validation(e, &lines))?;
        }
        Ok(Histogram::Probs(dist))
    }
}

/// Whether `label` survives a write and re-parse unchanged.
pub fn is_writable_label(label: &str) -> bool {
    !label.is_empty() && label.trim() == label && !label.contains(['\t', '\n', '\r', '#'])
}

/// Writes counts in histogram format, one `label<TAB>count` line per outcome
/// (bare counts when unlabelled).
pub fn write_counts(dist: &RationalDist) -> Result<String, CliError> {
    use shannon_core::Distribution;
    let mut out = String::new();
    match dist.labels() {
        Some(labels) => {
            for (label, n) in labels.iter().zip(dist.counts()) {
                if !is_writable_label(label) {
                    return Err(CliError::Usage(format!(
                        "label `{label}` cannot be written to a histogram file"
                    )));
                }
                out.push_str(&format!("{label}\t{n}\n"));
            }
        }
        None => {
            for n in dist.counts() {
                out.push_str(&format!("{n}\n"));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use shannon_core::Distribution;

    fn counts(text: &str) -> RationalDist {
        match parse(text).unwrap() {
            Histogram::Counts(d) => d,
            other => panic!("expected counts, got {other:?}"),
        }
    }

    #[test]
    fn bare_counts() {
        let d = counts("3\n7\n");
        assert_eq!(d.counts(), &[3, 7]);
        assert!(d.labels().is_none());
    }

    #[test]
    fn labels_comments_and_blanks() {
        let d = counts("# fruit\norange\t3\n\n apple \t 7  # ripe\n2\n");
        assert_eq!(d.counts(), &[3, 7, 2]);
        assert_eq!(d.labels().unwrap(), &["orange", "apple", "o2"]);
    }

    #[test]
    fn probabilities() {
        let Histogram::Probs(d) = parse("heads\t0.5\ntails\t5e-1\n").unwrap() else {
            panic!()
        };
        assert_eq!(d.probs(), &[0.5, 0.5]);
    }

    #[test]
    fn crlf_line_endings() {
        assert_eq!(counts("1\r\n2\r\n").counts(), &[1, 2]);
    }

    #[test]
    fn negative_count_reports_its_line() {
        let err = parse("-1\n2").unwrap_err();
        assert_eq!(err, CliError::Validation("negative count at line 1".into()));
        assert_eq!(err.exit_code(), 3);
        let err = parse("# c\n\n4\n-2\n").unwrap_err();
        assert_eq!(err.to_string(), "negative count at line 4");
    }

    #[test]
    fn parse_errors() {
        for (text, line) in [
            ("1\n0.5\n", 2),
            ("0.5\n1\n", 2),
            ("a\tb\tc\n", 1),
            ("x\n", 1),
            ("1\n\t4\n", 2),
            ("99999999999999999999999\n", 1),
            ("0.5x\n", 1),
        ] {
            match parse(text) {
                Err(CliError::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn validation_errors() {
        for text in ["", "# only\n", "0\n0\n", "0.5\n0.4\n", "0.5\n-0.5\n1.0\n"] {
            let err = parse(text).unwrap_err();
            assert_eq!(err.exit_code(), 3, "{text:?}: {err}");
        }
        assert_eq!(
            parse("0.5\n-0.5\n1.0\n").unwrap_err().to_string(),
            "negative probability at line 2"
        );
    }

    #[test]
    fn write_and_reparse() {
        let d = RationalDist::new(vec![3, 0, 7])
            .unwrap()
            .with_labels(vec!["a".into(), "b c".into(), "d".into()])
            .unwrap();
        let text = write_counts(&d).unwrap();
        assert_eq!(text, "a\t3\nb c\t0\nd\t7\n");
        assert_eq!(counts(&text), d);
        assert_eq!(
            write_counts(&RationalDist::new(vec![1, 2]).unwrap()).unwrap(),
            "1\n2\n"
        );
    }

    #[test]
    fn unwritable_labels() {
        let d = RationalDist::new(vec![1])
            .unwrap()
            .with_labels(vec!["a#b".into()])
            .unwrap();
        assert!(write_counts(&d).is_err());
        assert!(!is_writable_label(" a"));
        assert!(!is_writable_label(""));
    }
}
