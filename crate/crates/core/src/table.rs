//! Built-in knot table: PD codes, certified genus and 2-bridge parameters
//! for the prime knots through seven crossings.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::diagram::{parse_pd, DiagramError, KnotDiagram};

/// One table row. `genus` is certified metadata, not computed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub id: String,
    pub pd: String,
    #[serde(default)]
    pub genus: Option<u32>,
    #[serde(default)]
    pub two_bridge: Option<(u64, u64)>,
}

impl TableRow {
    pub fn diagram(&self) -> Result<KnotDiagram, DiagramError> {
        parse_pd(&self.pd)
    }
}

const BUILTIN_JSON: &str = include_str!("../data/knots.json");

pub fn builtin() -> &'static [TableRow] {
    static TABLE: OnceLock<Vec<TableRow>> = OnceLock::new();
    TABLE.get_or_init(|| serde_json::from_str(BUILTIN_JSON).expect("built-in table is valid JSON"))
}

pub fn builtin_json() -> &'static str {
    BUILTIN_JSON
}

pub fn lookup(id: &str) -> Option<&'static TableRow> {
    builtin().iter().find(|r| r.id == id)
}

pub fn known_ids() -> Vec<&'static str> {
    builtin().iter().map(|r| r.id.as_str()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::seifert_genus_upper;

    #[test]
    fn every_row_parses() {
        assert_eq!(builtin().len(), 15);
        for row in builtin() {
            let d = row.diagram().unwrap_or_else(|e| panic!("{}: {e}", row.id));
            let g = row.genus.unwrap();
            assert!(g <= seifert_genus_upper(&d).genus_upper, "{}", row.id);
        }
    }

    #[test]
    fn lookup_by_id() {
        assert_eq!(lookup("4_1").unwrap().two_bridge, Some((5, 2)));
        assert!(lookup("8_1").is_none());
        assert_eq!(known_ids()[0], "0_1");
    }
}
