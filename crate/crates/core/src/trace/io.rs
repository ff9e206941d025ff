//! Line-oriented JSON: a header `{kind, start, end}`, then one event per line.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{CrossingEvent, HomotopyTrace, Lobes, TraceError, TraceKind};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Header {
    kind: String,
    start: String,
    end: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Event {
    component: usize,
    sign: i8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lobes: Option<BTreeMap<usize, [i64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lz: Option<i64>,
}

impl HomotopyTrace {
    pub fn to_jsonl(&self) -> String {
        let header = Header { kind: self.kind.name().into(), start: self.start.clone(), end: self.end.clone() };
        let mut out = serde_json::to_string(&header).expect("plain data");
        out.push('\n');
        for e in &self.events {
            let (lobes, lz) = match &e.lobes {
                Lobes::Closed(m) => (Some(m.iter().map(|(&j, &(n, r))| (j, [n, r])).collect()), None),
                Lobes::Fibered(l) => (None, Some(*l)),
            };
            let line = Event { component: e.component, sign: e.sign, lobes, lz };
            out.push_str(&serde_json::to_string(&line).expect("plain data"));
            out.push('\n');
        }
        out
    }

    /// Parses and validates. Blank lines are skipped; errors carry 1-based line numbers.
    pub fn from_jsonl(text: &str) -> Result<Self, TraceError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (hl, h) = lines.next().ok_or(TraceError::MissingHeader)?;
        let parse_err = |line: usize, e: serde_json::Error| TraceError::Parse { line: line + 1, msg: e.to_string() };
        let header: Header = serde_json::from_str(h).map_err(|e| parse_err(hl, e))?;
        let kind = match header.kind.as_str() {
            "closed-link" => TraceKind::ClosedLink,
            "fibered-string-link" => TraceKind::FiberedStringLink,
            other => return Err(TraceError::Parse { line: hl + 1, msg: format!("unknown trace kind `{other}`") }),
        };
        let mut events = Vec::new();
        for (i, l) in lines {
            let e: Event = serde_json::from_str(l).map_err(|e| parse_err(i, e))?;
            let lobes = match (e.lobes, e.lz) {
                (Some(m), None) => Lobes::Closed(m.into_iter().map(|(j, [n, r])| (j, (n, r))).collect()),
                (None, Some(l)) => Lobes::Fibered(l),
                _ => {
                    return Err(TraceError::Parse { line: i + 1, msg: "an event needs exactly one of `lobes` and `lz`".into() })
                }
            };
            events.push(CrossingEvent { component: e.component, sign: e.sign, lobes });
        }
        HomotopyTrace::new(kind, &header.start, &header.end, events)
    }
}
