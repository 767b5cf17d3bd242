use super::{DiagramError, KnotDiagram};

/// Parses a PD code into a validated knot diagram.
///
/// Accepted spellings: `X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]` (separators may
/// be `;`, `,` or whitespace), the same wrapped in `PD[...]`, and the
/// nested-list form `[[1,5,2,4],[3,1,4,6],[5,3,6,2]]`. Empty input, `PD[]`
/// and `[]` denote the crossingless unknot.
pub fn parse_pd(text: &str) -> Result<KnotDiagram, DiagramError> {
    let tuples = Lexer::new(text).crossings()?;
    KnotDiagram::from_tuples(&tuples, text.to_string(), None)
}

struct Lexer<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, DiagramError> {
        Err(DiagramError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), DiagramError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        if self.bytes[self.pos..].starts_with(kw.as_bytes()) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<i64, DiagramError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.bytes.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii");
        match s.parse() {
            Ok(v) => Ok(v),
            Err(_) => {
                self.pos = start;
                self.err("expected an integer arc label")
            }
        }
    }

    fn tuple_body(&mut self) -> Result<[i64; 4], DiagramError> {
        let mut out = [0; 4];
        for (i, slot) in out.iter_mut().enumerate() {
            if i > 0 {
                self.expect(b',')?;
            }
            *slot = self.integer()?;
        }
        self.expect(b']')?;
        Ok(out)
    }

    fn crossings(mut self) -> Result<Vec<[i64; 4]>, DiagramError> {
        if self.peek().is_none() {
            return Ok(Vec::new());
        }
        let wrapped = self.eat_keyword("PD[");
        let mut out = Vec::new();
        if !wrapped && self.peek() == Some(b'[') {
            // Nested-list form.
            self.pos += 1;
            if !self.eat(b']') {
                loop {
                    self.expect(b'[')?;
                    out.push(self.tuple_body()?);
                    if self.eat(b']') {
                        break;
                    }
                    self.expect(b',')?;
                }
            }
        } else {
            loop {
                while matches!(self.peek(), Some(b';') | Some(b',')) {
                    self.pos += 1;
                }
                match self.peek() {
                    Some(b'X') => {
                        self.pos += 1;
                        self.expect(b'[')?;
                        out.push(self.tuple_body()?);
                    }
                    Some(b']') if wrapped => {
                        self.pos += 1;
                        break;
                    }
                    None if !wrapped => break,
                    None => return self.err("unterminated PD[...]"),
                    Some(c) => return self.err(format!("unexpected '{}'", c as char)),
                }
            }
        }
        if self.peek().is_some() {
            return self.err("trailing input");
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Sign;

    #[test]
    fn trefoil_pd_is_valid() {
        let d = parse_pd("X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]").unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.arc_count(), 6);
        assert!(d.crossings().iter().all(|x| x.sign == Sign::Negative));
        // Already in orientation order, so labels are untouched.
        assert_eq!(d.crossings()[1].arcs, [3, 6, 4, 1]);
    }

    #[test]
    fn accepted_spellings_agree() {
        let a = parse_pd("X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]").unwrap();
        let b = parse_pd("PD[X[1, 4, 2, 5], X[3, 6, 4, 1], X[5, 2, 6, 3]]").unwrap();
        let c = parse_pd("[[1,4,2,5],[3,6,4,1],[5,2,6,3]]").unwrap();
        let d = parse_pd("  X[1,4,2,5]  X[3,6,4,1]\nX[5,2,6,3] ").unwrap();
        assert_eq!(a.crossings(), b.crossings());
        assert_eq!(a.crossings(), c.crossings());
        assert_eq!(a.crossings(), d.crossings());
    }

    #[test]
    fn empty_inputs_are_the_unknot() {
        for text in ["", "   ", "PD[]", "[]"] {
            let d = parse_pd(text).unwrap();
            assert_eq!(d.crossing_count(), 0);
            assert_eq!(d.arc_count(), 1);
        }
    }

    #[test]
    fn arc_appearing_once_is_rejected() {
        let err = parse_pd("X[1,4,2,3];X[3,6,4,5]").unwrap_err();
        assert_eq!(err, DiagramError::ArcMultiplicity { label: 1, count: 1 });
    }

    #[test]
    fn paired_straight_through_arcs_form_a_link() {
        // Every crossing here pairs 2k-1 with 2k on both strands, so tracing
        // closes up after two edges: three components, not a trefoil.
        let err = parse_pd("X[1,4,2,3];X[3,6,4,5];X[5,2,6,1]").unwrap_err();
        assert_eq!(err, DiagramError::MultiComponent { components: 3 });
    }

    #[test]
    fn hopf_link_rejected() {
        let err = parse_pd("X[1,3,2,4];X[3,1,4,2]").unwrap_err();
        assert!(matches!(err, DiagramError::MultiComponent { components: 2 }));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        for text in ["X[1,2,3]", "X[1,2,3,4", "Y[1,2,3,4]", "X[1,2,a,4]", "PD[X[1,2,2,1]", "[[1,2,2,1]] x"] {
            assert!(
                matches!(parse_pd(text), Err(DiagramError::Syntax { .. })),
                "{text} should be a syntax error"
            );
        }
    }

    #[test]
    fn arbitrary_labels_are_normalized() {
        let d = parse_pd("X[10,40,20,50];X[30,60,40,10];X[50,20,60,30]").unwrap();
        assert_eq!(d.crossings()[0].arcs, [1, 4, 2, 5]);
    }

    #[test]
    fn reversed_labels_are_reoriented() {
        // The trefoil with orientation reversed: under-strands now run
        // from the larger label to the smaller one.
        let d = parse_pd("X[2,5,1,4];X[4,1,3,6];X[6,3,5,2]").unwrap();
        assert_eq!(d.crossing_count(), 3);
        for x in d.crossings() {
            assert_eq!(d.next_arc(x.incoming_under()), x.outgoing_under());
            assert_eq!(d.next_arc(x.incoming_over()), x.outgoing_over());
        }
    }

    #[test]
    fn one_crossing_kink() {
        let d = parse_pd("X[1,2,2,1]").unwrap();
        assert_eq!(d.crossing_count(), 1);
        assert_eq!(d.arc_count(), 2);
    }
}
