use crate::cost::SoftWeights;
use crate::exec::Exec;

/// Harmony search settings. Defaults follow the published configuration:
/// memory of 50, HMCR 0.9, PAR 1.0, 50 improvisations.
#[derive(Debug, Clone, PartialEq)]
pub struct HsaParams {
    pub hms: usize,
    pub hmcr: f64,
    pub par: f64,
    pub mi: usize,
    /// Repair iterations allowed per improvisation; `None` means ten per lecture.
    pub repair_cap: Option<usize>,
    /// Improvisation restarts allowed per iteration before the run aborts.
    pub restart_limit: usize,
    /// Construction restarts allowed per memory member.
    pub construction_attempts: usize,
    pub seed: u64,
    pub weights: SoftWeights,
    pub exec: Exec,
}

impl Default for HsaParams {
    fn default() -> Self {
        HsaParams {
            hms: 50,
            hmcr: 0.9,
            par: 1.0,
            mi: 50,
            repair_cap: None,
            restart_limit: 50,
            construction_attempts: 100,
            seed: 0,
            weights: SoftWeights::default(),
            exec: Exec::default(),
        }
    }
}

impl HsaParams {
    pub fn validate(&self) -> Result<(), String> {
        if self.hms == 0 {
            return Err("hms must be at least 1".into());
        }
        if !(0.0..=1.0).contains(&self.hmcr) {
            return Err(format!("hmcr {} outside [0, 1]", self.hmcr));
        }
        if !(0.0..=1.0).contains(&self.par) {
            return Err(format!("par {} outside [0, 1]", self.par));
        }
        Ok(())
    }

    pub fn repair_cap_for(&self, lectures: usize) -> usize {
        self.repair_cap.unwrap_or(10 * lectures)
    }
}
