"""Tangent cones at infinity of affine complex algebraic sets, computed exactly."""
