"""Quantum alpha-determinant cyclic modules over A_q(Mat_2)."""
