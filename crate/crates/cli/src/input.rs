use tensorcount::{Error, Permutation, Result};

/// Splits on commas that sit outside brackets and parentheses.
pub fn split_tuple(s: &str) -> Result<Vec<String>> {
    let mut pieces = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                pieces.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(Error::InvalidPermutation(format!("unbalanced brackets in {s:?}")));
        }
        cur.push(ch);
    }
    if depth != 0 {
        return Err(Error::InvalidPermutation(format!("unbalanced brackets in {s:?}")));
    }
    pieces.push(cur);
    let pieces: Vec<String> = pieces.into_iter().map(|p| p.trim().to_string()).collect();
    if pieces.iter().any(String::is_empty) {
        return Err(Error::InvalidPermutation(format!("empty entry in {s:?}")));
    }
    Ok(pieces)
}

fn is_identity_token(s: &str) -> bool {
    matches!(s, "()" | "id" | "e")
}

/// Smallest degree that holds every point mentioned in `piece`.
fn mentioned_degree(piece: &str) -> usize {
    if is_identity_token(piece) {
        return 0;
    }
    if piece.starts_with('[') {
        return piece.split(',').count();
    }
    piece
        .split(|c: char| !c.is_ascii_digit())
        .filter_map(|t| t.parse::<usize>().ok())
        .max()
        .unwrap_or(0)
}

/// Parses several comma-separated tuples against a shared degree, defaulting to
/// the largest point mentioned rounded up to an even number.
pub fn parse_tuples(raw: &[&str], degree: Option<usize>) -> Result<Vec<Vec<Permutation>>> {
    let split: Vec<Vec<String>> = raw.iter().map(|s| split_tuple(s)).collect::<Result<_>>()?;
    let m = match degree {
        Some(m) => m,
        None => {
            let top = split.iter().flatten().map(|p| mentioned_degree(p)).max().unwrap_or(0);
            (top.max(2) + 1) / 2 * 2
        }
    };
    split
        .iter()
        .map(|tuple| {
            tuple
                .iter()
                .map(|p| {
                    if is_identity_token(p) {
                        Ok(Permutation::identity(m))
                    } else {
                        Permutation::parse(p, Some(m))
                    }
                })
                .collect()
        })
        .collect()
}
