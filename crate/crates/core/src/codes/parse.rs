//! The plain-text code format: a header line `n k`, then `k` generator
//! rows of `0`/`1`. `#` starts a comment; blank lines are ignored.

use super::{CodeError, Codeword, LinearCode};

/// Parses a code file, reporting the line and column of bad input.
pub fn parse_code(text: &str) -> Result<LinearCode, CodeError> {
    let mut header: Option<(usize, usize)> = None;
    let mut rows = Vec::new();
    let mut last_line = 0;
    for (ln, raw) in text.lines().enumerate() {
        last_line = ln + 1;
        let line = raw.split('#').next().unwrap_or("");
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = line.len() - line.trim_start().len();
        let err = |col: usize, msg: String| CodeError::Parse {
            line: ln + 1,
            col: col + 1,
            msg,
        };
        let Some((n, k)) = header else {
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            let parsed = match fields.as_slice() {
                [n, k] => n.parse::<usize>().ok().zip(k.parse::<usize>().ok()),
                _ => None,
            };
            let (n, k) = parsed.ok_or_else(|| err(indent, format!("expected header `n k`, found `{trimmed}`")))?;
            if n > super::MAX_LENGTH {
                return Err(err(indent, format!("length {n} exceeds 64")));
            }
            header = Some((n, k));
            continue;
        };
        if let Some((col, ch)) = trimmed.char_indices().find(|&(_, c)| c != '0' && c != '1') {
            return Err(err(indent + col, format!("unexpected character `{ch}`")));
        }
        if rows.len() == k {
            return Err(err(indent, format!("more than {k} generator rows")));
        }
        if trimmed.len() != n {
            return Err(err(indent, format!("row has length {}, expected {n}", trimmed.len())));
        }
        rows.push(Codeword::parse(trimmed).map_err(|e| err(indent, e.to_string()))?);
    }
    let Some((n, k)) = header else {
        return Err(CodeError::Parse {
            line: 1,
            col: 1,
            msg: "missing header `n k`".into(),
        });
    };
    if rows.len() != k {
        return Err(CodeError::Parse {
            line: last_line.max(1),
            col: 1,
            msg: format!("expected {k} generator rows, found {}", rows.len()),
        });
    }
    LinearCode::new(n, rows)
}

/// Inverse of [`parse_code`].
pub fn write_code(code: &LinearCode) -> String {
    let mut out = format!("{} {}\n", code.len(), code.dim());
    for g in code.generators() {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}
