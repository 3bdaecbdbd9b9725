"""Simulator and weak-limit toolkit for time-dependent coined quantum walks."""
