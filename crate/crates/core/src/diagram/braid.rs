use super::{DiagramError, KnotDiagram, Sign};

/// Parses a braid word and returns the diagram of its closure.
///
/// Generators are written `s1`, `s2`, ... with inverses `s1^-1`; tokens are
/// separated by whitespace or commas. The bracketed integer form
/// `[1,-2,1,-2]` is accepted too. The strand count is one more than the
/// largest generator index.
pub fn parse_braid(text: &str) -> Result<KnotDiagram, DiagramError> {
    let word = parse_word(text)?;
    closure(&word, text.to_string())
}

fn parse_word(text: &str) -> Result<Vec<(usize, Sign)>, DiagramError> {
    let trimmed = text.trim();
    if let Some(inner) = trimmed.strip_prefix('[') {
        let inner = inner.strip_suffix(']').ok_or_else(|| DiagramError::Syntax {
            pos: text.len(),
            msg: "unterminated braid list".into(),
        })?;
        return inner
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                let v: i64 = t.parse().map_err(|_| DiagramError::Syntax {
                    pos: offset_of(text, t),
                    msg: format!("bad braid letter '{t}'"),
                })?;
                if v == 0 {
                    return Err(DiagramError::Syntax {
                        pos: offset_of(text, t),
                        msg: "generator index must be nonzero".into(),
                    });
                }
                let sign = if v > 0 { Sign::Positive } else { Sign::Negative };
                Ok((v.unsigned_abs() as usize, sign))
            })
            .collect();
    }

    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|tok| parse_letter(tok).ok_or_else(|| DiagramError::Syntax {
            pos: offset_of(text, tok),
            msg: format!("bad braid letter '{tok}'"),
        }))
        .collect()
}

fn offset_of(haystack: &str, needle: &str) -> usize {
    needle.as_ptr() as usize - haystack.as_ptr() as usize
}

fn parse_letter(tok: &str) -> Option<(usize, Sign)> {
    let rest = tok.strip_prefix('s').or_else(|| tok.strip_prefix('S'))?;
    let (index, power) = match rest.split_once('^') {
        Some((i, p)) => (i, p.trim_matches(|c| c == '{' || c == '}')),
        None => (rest, "1"),
    };
    let index: usize = index.parse().ok().filter(|&i| i >= 1)?;
    let sign = match power {
        "1" | "+1" => Sign::Positive,
        "-1" => Sign::Negative,
        _ => return None,
    };
    Some((index, sign))
}

/// Closes a braid with strands running upward. For `s_k` the strand in
/// position `k` crosses over the strand in position `k+1`; inverses swap
/// which strand is on top.
fn closure(word: &[(usize, Sign)], source: String) -> Result<KnotDiagram, DiagramError> {
    let strands = word.iter().map(|&(k, _)| k).max().unwrap_or(0) + 1;
    // Edge ids: the bottom of each strand gets one id, each crossing
    // creates two new ones. Closing identifies top and bottom ids.
    let mut current: Vec<usize> = (0..strands).collect();
    let mut next_id = strands;
    let mut raw: Vec<[usize; 4]> = Vec::with_capacity(word.len());
    let mut signs = Vec::with_capacity(word.len());
    let mut touched = vec![false; strands];
    for &(k, sign) in word {
        let (l, r) = (k - 1, k);
        touched[l] = true;
        touched[r] = true;
        let (new_left, new_right) = (next_id, next_id + 1);
        next_id += 2;
        let tuple = match sign {
            // Under-strand runs bottom-right to top-left.
            Sign::Positive => [current[r], new_right, new_left, current[l]],
            // Under-strand runs bottom-left to top-right.
            Sign::Negative => [current[l], current[r], new_right, new_left],
        };
        raw.push(tuple);
        signs.push(sign);
        current[l] = new_left;
        current[r] = new_right;
    }

    if word.is_empty() {
        return Ok(KnotDiagram {
            source,
            ..KnotDiagram::unknot()
        });
    }
    let free = touched.iter().filter(|&&t| !t).count();
    if free > 0 {
        // Untouched strands close into separate round circles.
        let traced = KnotDiagram::from_tuples(&identify(&raw, &current, strands), source.clone(), None)
            .map(|_| 1)
            .or_else(|e| match e {
                DiagramError::MultiComponent { components } => Ok(components),
                other => Err(other),
            })?;
        return Err(DiagramError::MultiComponent {
            components: traced + free,
        });
    }
    KnotDiagram::from_tuples(&identify(&raw, &current, strands), source, Some(&signs))
}

/// Rewrites top-of-strand ids to the matching bottom ids.
fn identify(raw: &[[usize; 4]], top: &[usize], strands: usize) -> Vec<[i64; 4]> {
    let mut map: Vec<usize> = (0..raw.len() * 2 + strands).collect();
    for (pos, &t) in top.iter().enumerate() {
        map[t] = pos;
    }
    raw.iter()
        .map(|t| t.map(|id| map[id] as i64))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn letters() {
        assert_eq!(parse_letter("s1"), Some((1, Sign::Positive)));
        assert_eq!(parse_letter("s12^-1"), Some((12, Sign::Negative)));
        assert_eq!(parse_letter("S2^{-1}"), Some((2, Sign::Negative)));
        assert_eq!(parse_letter("s0"), None);
        assert_eq!(parse_letter("s1^2"), None);
        assert_eq!(parse_letter("t1"), None);
    }

    #[test]
    fn trefoil_closure() {
        let d = parse_braid("s1 s1 s1").unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.arc_count(), 6);
        assert!(d.crossings().iter().all(|x| x.sign == Sign::Positive));
    }

    #[test]
    fn single_generator_closes_to_one_component() {
        let d = parse_braid("s1").unwrap();
        assert_eq!(d.crossing_count(), 1);
        assert_eq!(d.arc_count(), 2);
    }

    #[test]
    fn three_strand_two_crossings() {
        let d = parse_braid("s1 s2").unwrap();
        assert_eq!(d.crossing_count(), 2);
        assert_eq!(d.arc_count(), 4);
    }

    #[test]
    fn links_rejected() {
        assert_eq!(
            parse_braid("s1 s1").unwrap_err(),
            DiagramError::MultiComponent { components: 2 }
        );
        assert_eq!(
            parse_braid("s1 s1^-1").unwrap_err(),
            DiagramError::MultiComponent { components: 2 }
        );
        // Strand 1 of "s2" never crosses anything.
        assert_eq!(
            parse_braid("s2").unwrap_err(),
            DiagramError::MultiComponent { components: 2 }
        );
    }

    #[test]
    fn bracketed_form_matches_letters() {
        let a = parse_braid("[1,-2,1,-2]").unwrap();
        let b = parse_braid("s1 s2^-1 s1 s2^-1").unwrap();
        assert_eq!(a.crossings(), b.crossings());
    }

    #[test]
    fn malformed_words() {
        assert!(matches!(parse_braid("s1 x2"), Err(DiagramError::Syntax { pos: 3, .. })));
        assert!(matches!(parse_braid("[1,0]"), Err(DiagramError::Syntax { .. })));
        assert!(matches!(parse_braid("[1,2"), Err(DiagramError::Syntax { .. })));
    }

    #[test]
    fn empty_word_is_unknot() {
        assert_eq!(parse_braid("").unwrap().crossing_count(), 0);
    }
}
