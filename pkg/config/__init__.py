"""
Configuration Module
YAML files for run defaults and verification sweep parameters
"""
