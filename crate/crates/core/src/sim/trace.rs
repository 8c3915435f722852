//! Per-phase trace dump.

use std::io::Write;

use super::machine::TraceEvent;
use crate::error::{Error, Result};

/// Writes `phase,start_cycle,end_cycle,core_id,elements_moved` rows.
pub fn write_trace<W: Write>(w: W, events: &[TraceEvent]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(["phase", "start_cycle", "end_cycle", "core_id", "elements_moved"])?;
    for e in events {
        wtr.serialize((e.phase, e.start_cycle, e.end_cycle, e.core_id, e.elements_moved))?;
    }
    wtr.flush().map_err(|e| Error::Csv(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::machine::Phase;

    #[test]
    fn header_and_rows() {
        let ev = [TraceEvent {
            phase: Phase::SyncDown,
            start_cycle: 0,
            end_cycle: 6,
            core_id: 2,
            elements_moved: 6,
        }];
        let mut buf = Vec::new();
        write_trace(&mut buf, &ev).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "phase,start_cycle,end_cycle,core_id,elements_moved\nsync_down,0,6,2,6\n"
        );
    }

    #[test]
    fn empty_trace_still_has_header() {
        let mut buf = Vec::new();
        write_trace(&mut buf, &[]).unwrap();
        assert_eq!(buf, b"phase,start_cycle,end_cycle,core_id,elements_moved\n");
    }
}
