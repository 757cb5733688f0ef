use serde::Serialize;

use super::{walsh_spectrum, MaxCorrelation, SpectrumClass, WalshSpectrum};
use crate::boolfn::BooleanFunction;

/// Summary written by `walshdj analyze`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalyticsReport {
    pub n: usize,
    pub weight: u64,
    pub balanced: bool,
    pub nonlinearity: u64,
    pub resiliency: Option<u32>,
    pub class: SpectrumClass,
    pub max_correlation: MaxCorrelation,
}

impl AnalyticsReport {
    pub fn from_parts(f: &BooleanFunction, s: &WalshSpectrum) -> Self {
        AnalyticsReport {
            n: f.n(),
            weight: f.weight(),
            balanced: f.is_balanced(),
            nonlinearity: s.nonlinearity(),
            resiliency: s.resiliency_order(),
            class: s.classify(),
            max_correlation: s.max_correlation(),
        }
    }

    pub fn to_text(&self) -> String {
        let resiliency = match self.resiliency {
            Some(m) => m.to_string(),
            None => "none".to_string(),
        };
        format!(
            "n: {}\nweight: {}\nbalanced: {}\nnonlinearity: {}\nresiliency: {}\nclass: {}\nmax_correlation: {} {}\n",
            self.n,
            self.weight,
            self.balanced,
            self.nonlinearity,
            resiliency,
            self.class,
            super::mask_to_binary(self.max_correlation.omega, self.n),
            self.max_correlation.value,
        )
    }
}

pub fn analyze(f: &BooleanFunction) -> AnalyticsReport {
    AnalyticsReport::from_parts(f, &walsh_spectrum(f))
}
