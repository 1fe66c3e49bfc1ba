"""
Projection Order Toolkit - точка входа командной строки.

Функционал:
- meet / join / g.l.b.-критерии для семейств проекторов
- равнители (equalizers), элемент разрыва, неравенство для спектральных семейств
- pullback и интерполяция pregap в блочных алгебрах
- модель алгебры Калкина на блочных последовательностях
- verify: воспроизводимые наборы свойств с сохранением истории прогонов
"""

import logging
import sys

from config import Config
from modules.cli import EXIT_INPUT, run

# Настройка логирования (stdout занят отчётом)
logging.basicConfig(
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    level=getattr(logging, Config.LOG_LEVEL, logging.WARNING),
    stream=sys.stderr,
)
logger = logging.getLogger(__name__)


def main() -> int:
    """Главная функция приложения."""
    try:
        Config.validate()
    except ValueError as e:
        logger.critical(f"Configuration error: {e}")
        print(f"❌ Configuration error: {e}", file=sys.stderr)
        return EXIT_INPUT
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
