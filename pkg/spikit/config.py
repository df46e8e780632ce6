"""
spikit configuration

Precedence: command-line flag > environment (SPIKIT_*) or .env > default.
"""

from __future__ import annotations

from typing import Any

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from .spi import SpiParams, Variant
from .treekernel import KernelParams, Mode


class SpikitSettings(BaseSettings):
    """Kernel, SPI and runtime settings shared by every command"""

    model_config = SettingsConfigDict(
        env_prefix="SPIKIT_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
        populate_by_name=True,
    )

    # Kernel
    # aliases skip env_prefix; the field name still works as a keyword
    kernel_lambda: float = Field(1.0, validation_alias="SPIKIT_LAMBDA")
    mode: Mode = Mode.DELEXICALIZED

    # SPI
    gamma: float = 3.0
    variant: Variant = Variant.TANH
    epsilon: float = Field(0.0, ge=0.0)

    # Runtime
    workers: int = Field(1, ge=1)
    log_level: str = "WARNING"
    log_json: bool = False

    def with_overrides(self, **flags: Any) -> SpikitSettings:
        """New settings with every non-None flag applied on top"""
        updates = {key: value for key, value in flags.items() if value is not None}
        if not updates:
            return self
        return type(self)(**{**self.model_dump(), **updates})

    def kernel_params(self) -> KernelParams:
        return KernelParams(decay=self.kernel_lambda, mode=self.mode)

    def spi_params(self) -> SpiParams:
        return SpiParams(gamma=self.gamma, variant=self.variant)

    def echo(self) -> dict[str, Any]:
        """Resolved parameters as echoed into reports and --json output"""
        return {
            **self.kernel_params().as_dict(),
            **self.spi_params().as_dict(),
            "epsilon": self.epsilon,
        }
