"""Plane quartics: normal forms, singularities and weak-bitangent lines."""
