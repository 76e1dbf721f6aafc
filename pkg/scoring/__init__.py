"""
Ranking-based scoring engine.
Contains score functions, standings, tie-breaking, scoring tables, analysis and simulation.
"""
