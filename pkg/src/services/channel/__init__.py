"""Simulated print-scan channel and the virtual printer presets."""

from src.services.channel.print_scan import ChannelParams, print_scan
from src.services.channel.presets import PrinterPreset, list_presets, preset

__all__ = ["ChannelParams", "PrinterPreset", "list_presets", "preset", "print_scan"]
