//! Run manifest emitted on stderr at the end of every invocation. stdout and
//! output files stay byte-deterministic; wall time lives only here.

use std::time::Duration;

pub fn emit(command: &str, wall: Duration, exit_code: u8, summary: &str) {
    eprintln!(
        "# run-manifest command={:?} version={} precision=\"double-double (~31-32 digits)\" wall_ms={} exit={} summary={:?}",
        command,
        env!("CARGO_PKG_VERSION"),
        wall.as_millis(),
        exit_code,
        summary
    );
}
