//! Execution strategy for the data-parallel kernels. With the `parallel`
//! feature enabled (the default) the heavy inner loops fan out over a rayon
//! pool; `Exec::Sequential` forces the single-threaded path, and builds
//! without the feature always use it.

/// How a kernel should schedule its work.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// Whether this strategy may actually run in parallel in this build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}
