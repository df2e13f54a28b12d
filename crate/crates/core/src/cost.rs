use std::ops::AddAssign;

use serde::{Deserialize, Serialize};

/// Operation counts accumulated while segmenting.
///
/// The compressed path never reads pixels, so `pixel_reads` stays zero there;
/// the pixel-domain reference path fills it instead.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostLedger {
    /// Black-run entries accumulated into the row profile.
    pub profile_additions: u64,
    /// Row-profile values inspected while finding lines.
    pub profile_reads: u64,
    /// Virtual columns emitted by band scanners.
    pub scanner_advances: u64,
    /// Single-pixel pops from run heads.
    pub scanner_pops: u64,
    /// Cursor moves to the next white/black run pair.
    pub run_shifts: u64,
    pub pixel_reads: u64,
}

impl AddAssign for CostLedger {
    fn add_assign(&mut self, o: Self) {
        self.profile_additions += o.profile_additions;
        self.profile_reads += o.profile_reads;
        self.scanner_advances += o.scanner_advances;
        self.scanner_pops += o.scanner_pops;
        self.run_shifts += o.run_shifts;
        self.pixel_reads += o.pixel_reads;
    }
}
