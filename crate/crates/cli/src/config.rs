use qspine::cyclo::is_prime;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Homology,
    Skein,
    Both,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Homology => "homology",
            Method::Skein => "skein",
            Method::Both => "both",
        }
    }

    pub fn uses_homology(self) -> bool {
        matches!(self, Method::Homology | Method::Both)
    }

    pub fn uses_skein(self) -> bool {
        matches!(self, Method::Skein | Method::Both)
    }

    /// `both` when the homological formula applies, `skein` otherwise.
    pub fn default_for(euler_char: i64) -> Method {
        if euler_char >= 1 {
            Method::Both
        } else {
            Method::Skein
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FuzzParams {
    pub seed: u64,
    pub moves: usize,
    pub cases: usize,
    pub only_case: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub p: u64,
    /// `None` means the per-input default.
    pub method: Option<Method>,
    pub guard: usize,
    pub fuzz: FuzzParams,
    pub format: OutputFormat,
    pub timing: bool,
}

impl RunConfig {
    pub fn new(
        p: u64,
        method: Option<Method>,
        guard: usize,
        fuzz: FuzzParams,
        format: OutputFormat,
        timing: bool,
    ) -> Result<Self, String> {
        if p < 5 || !is_prime(p) {
            return Err(format!("--p must be a prime >= 5, got {p}"));
        }
        if guard < 2 {
            return Err(format!("--guard must be at least 2, got {guard}"));
        }
        Ok(RunConfig {
            p,
            method,
            guard,
            fuzz,
            format,
            timing,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        let ok = RunConfig::new(
            7,
            None,
            14,
            FuzzParams::default(),
            OutputFormat::Text,
            false,
        );
        assert!(ok.is_ok());
        assert!(RunConfig::new(
            9,
            None,
            14,
            FuzzParams::default(),
            OutputFormat::Text,
            false
        )
        .is_err());
        assert!(RunConfig::new(
            3,
            None,
            14,
            FuzzParams::default(),
            OutputFormat::Text,
            false
        )
        .is_err());
        assert!(
            RunConfig::new(5, None, 1, FuzzParams::default(), OutputFormat::Text, false).is_err()
        );
    }

    #[test]
    fn default_method() {
        assert_eq!(Method::default_for(1), Method::Both);
        assert_eq!(Method::default_for(0), Method::Skein);
    }
}
