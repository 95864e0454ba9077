"""Pytest testing suite"""
