"""Mathematical modules: grids, configurations, searches, audits and numerics."""
