//! Benchmark inputs shared by the criterion targets.

use alcove_hecke::{FundamentalDomain, JContext, JParamSystem, WeightFunction};

/// Context, all-negative system with equal weights, and default domain.
pub fn setup(label: &str, j: &[usize]) -> (JContext, JParamSystem, FundamentalDomain) {
    let ctx = JContext::from_label(label, j).expect("valid label");
    let v = JParamSystem::all_negative(&ctx, &WeightFunction::equal(&ctx.aw));
    let dom = ctx.default_domain();
    (ctx, v, dom)
}
