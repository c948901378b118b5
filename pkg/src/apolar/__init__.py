"""Exact apolarity workbench."""
