"""Virtual printer presets (SA, LX laser; HP, CA inkjet)."""

from dataclasses import dataclass
from types import MappingProxyType

from src.services.channel.print_scan import ChannelParams
from src.utils.constants import INKJET_PRINTERS, PRINTER_IDS, PRINTER_PRESETS
from src.utils.errors import PresetNotFoundError


@dataclass(frozen=True)
class PrinterPreset:
    id: str
    params: ChannelParams

    @property
    def technology(self) -> str:
        return "inkjet" if self.id in INKJET_PRINTERS else "laser"


_PRESETS = MappingProxyType({
    printer_id: PrinterPreset(printer_id, ChannelParams(**PRINTER_PRESETS[printer_id]))
    for printer_id in PRINTER_IDS
})


def preset(printer_id: str) -> ChannelParams:
    """Channel parameters of a named virtual printer."""
    try:
        return _PRESETS[printer_id].params
    except KeyError:
        raise PresetNotFoundError(
            f"Unknown printer id '{printer_id}'. Available: {', '.join(PRINTER_IDS)}"
        ) from None


def list_presets() -> list[PrinterPreset]:
    return [_PRESETS[printer_id] for printer_id in PRINTER_IDS]
